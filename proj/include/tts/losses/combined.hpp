#pragma once

#include <span>

#include "tts/align/durations.hpp"
#include "tts/losses/config.hpp"
#include "tts/losses/huber.hpp"
#include "tts/losses/l1.hpp"
#include "tts/losses/ssim.hpp"

namespace tts::losses {

struct AcousticLoss {
  double total = 0.0;
  // unweighted components
  double l1 = 0.0;
  double ssim = 0.0;  // 1 - mean SSIM
  double duration = 0.0;
};

/// lambda_l1 * L1 + lambda_ssim * (1 - SSIM) + lambda_dur * Huber(log durations)
inline AcousticLoss combined_acoustic_loss(const Matrix& pred_mel, const Matrix& target_mel,
                                           std::span<const double> pred_log_dur,
                                           const align::DurationSequence& target_dur, const LossConfig& cfg) {
  cfg.validate();
  AcousticLoss out;
  out.l1 = l1_loss(pred_mel, target_mel, false).value;
  out.ssim = ssim_loss(pred_mel, target_mel, cfg, false).value;
  out.duration = huber_log_duration_loss(pred_log_dur, target_dur, cfg.huber_delta, false).value;
  out.total = cfg.lambda_l1 * out.l1 + cfg.lambda_ssim * out.ssim + cfg.lambda_dur * out.duration;
  return out;
}

}  // namespace tts::losses
