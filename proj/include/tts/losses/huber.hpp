#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "tts/align/durations.hpp"
#include "tts/error.hpp"

namespace tts::losses {

struct SequenceLoss {
  double value = 0.0;
  std::optional<std::vector<double>> grad;
};

inline double huber(double e, double delta) {
  const double a = std::abs(e);
  return a <= delta ? 0.5 * e * e : delta * (a - 0.5 * delta);
}

inline double huber_derivative(double e, double delta) {
  if (e > delta) return delta;
  if (e < -delta) return -delta;
  return e;
}

/// Mean Huber loss between predicted log durations and ln(1 + d).
inline SequenceLoss huber_log_duration_loss(std::span<const double> pred_log, const align::DurationSequence& target,
                                            double delta, bool with_grad) {
  if (pred_log.size() != target.size()) throw Error("huber_log_duration_loss: length mismatch");
  if (pred_log.empty()) throw Error("huber_log_duration_loss: empty input");
  if (!(delta > 0.0)) throw Error("huber_log_duration_loss: delta must be positive");
  const auto n = static_cast<double>(pred_log.size());
  SequenceLoss out;
  std::vector<double> g(pred_log.size());
  for (std::size_t i = 0; i < pred_log.size(); ++i) {
    const double e = pred_log[i] - std::log1p(static_cast<double>(target.frames[i]));
    out.value += huber(e, delta);
    g[i] = huber_derivative(e, delta) / n;
  }
  out.value /= n;
  if (with_grad) out.grad = std::move(g);
  return out;
}

}  // namespace tts::losses
