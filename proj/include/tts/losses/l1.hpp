#pragma once

#include <cmath>
#include <optional>

#include "tts/error.hpp"
#include "tts/matrix.hpp"

namespace tts::losses {

struct MatrixLoss {
  double value = 0.0;
  std::optional<Matrix> grad;
};

/// Mean absolute error. Gradient is sign(pred - target) / size, 0 at equality.
inline MatrixLoss l1_loss(const Matrix& pred, const Matrix& target, bool with_grad) {
  if (!pred.same_shape(target)) throw Error("l1_loss: shape mismatch");
  if (pred.empty()) throw Error("l1_loss: empty input");
  const auto n = static_cast<double>(pred.size());
  MatrixLoss out;
  double sum = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) sum += std::abs(pred.data()[k] - target.data()[k]);
  out.value = sum / n;
  if (with_grad) {
    Matrix g(pred.rows(), pred.cols(), 0.0);
    for (std::size_t k = 0; k < pred.size(); ++k) {
      const double e = pred.data()[k] - target.data()[k];
      g.data()[k] = e > 0.0 ? 1.0 / n : (e < 0.0 ? -1.0 / n : 0.0);
    }
    out.grad = std::move(g);
  }
  return out;
}

}  // namespace tts::losses
