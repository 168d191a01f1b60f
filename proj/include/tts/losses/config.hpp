#pragma once

#include "tts/error.hpp"

namespace tts::losses {

/// Weights and constants of the acoustic-model objective.
struct LossConfig {
  double lambda_l1 = 1.0;
  double lambda_ssim = 1.0;
  double lambda_dur = 1.0;
  int ssim_window = 11;
  double ssim_sigma = 1.5;
  double dynamic_range = 4.0;  // L, the spectrogram normalization range
  double k1 = 0.01;
  double k2 = 0.03;
  double huber_delta = 1.0;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }

  void validate() const {
    if (lambda_l1 < 0.0 || lambda_ssim < 0.0 || lambda_dur < 0.0) throw Error("loss config: weights must be >= 0");
    if (!(dynamic_range > 0.0)) throw Error("loss config: dynamic_range must be positive");
    if (!(huber_delta > 0.0)) throw Error("loss config: huber_delta must be positive");
    if (ssim_window < 1 || ssim_window % 2 == 0) throw Error("loss config: ssim_window must be odd and positive");
    if (!(ssim_sigma > 0.0)) throw Error("loss config: ssim_sigma must be positive");
  }
};

}  // namespace tts::losses
