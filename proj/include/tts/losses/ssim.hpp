#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tts/error.hpp"
#include "tts/losses/config.hpp"
#include "tts/losses/l1.hpp"
#include "tts/matrix.hpp"

namespace tts::losses {

namespace detail {

inline std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> g(static_cast<std::size_t>(size));
  const int r = size / 2;
  double sum = 0.0;
  for (int k = 0; k < size; ++k) {
    const double x = k - r;
    g[static_cast<std::size_t>(k)] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += g[static_cast<std::size_t>(k)];
  }
  for (double& v : g) v /= sum;
  return g;
}

inline std::size_t mirror(long i, std::size_t n) {
  if (n == 1) return 0;
  const long period = 2 * (static_cast<long>(n) - 1);
  long r = i % period;
  if (r < 0) r += period;
  return static_cast<std::size_t>(r < static_cast<long>(n) ? r : period - r);
}

// Separable Gaussian filter with reflect borders, and its adjoint.
class GaussianFilter {
 public:
  GaussianFilter(int size, double sigma) : g_(gaussian_kernel(size, sigma)), r_(size / 2) {}

  Matrix apply(const Matrix& x) const {
    Matrix h(x.rows(), x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < g_.size(); ++a) {
          acc += g_[a] * x(i, mirror(static_cast<long>(j + a) - r_, x.cols()));
        }
        h(i, j) = acc;
      }
    }
    Matrix out(x.rows(), x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < g_.size(); ++a) {
          acc += g_[a] * h(mirror(static_cast<long>(i + a) - r_, x.rows()), j);
        }
        out(i, j) = acc;
      }
    }
    return out;
  }

  Matrix adjoint(const Matrix& y) const {
    Matrix h(y.rows(), y.cols(), 0.0);
    for (std::size_t i = 0; i < y.rows(); ++i) {
      for (std::size_t j = 0; j < y.cols(); ++j) {
        for (std::size_t a = 0; a < g_.size(); ++a) {
          h(mirror(static_cast<long>(i + a) - r_, y.rows()), j) += g_[a] * y(i, j);
        }
      }
    }
    Matrix out(y.rows(), y.cols(), 0.0);
    for (std::size_t i = 0; i < y.rows(); ++i) {
      for (std::size_t j = 0; j < y.cols(); ++j) {
        for (std::size_t a = 0; a < g_.size(); ++a) {
          out(i, mirror(static_cast<long>(j + a) - r_, y.cols())) += g_[a] * h(i, j);
        }
      }
    }
    return out;
  }

 private:
  std::vector<double> g_;
  long r_;
};

inline Matrix hadamard(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
  return out;
}

struct LocalMoments {
  Matrix mx, my, sxx, syy, sxy;  // filtered x, y, x^2, y^2, xy
};

inline LocalMoments local_moments(const GaussianFilter& f, const Matrix& x, const Matrix& y) {
  return {f.apply(x), f.apply(y), f.apply(hadamard(x, x)), f.apply(hadamard(y, y)), f.apply(hadamard(x, y))};
}

inline void check_inputs(const Matrix& x, const Matrix& y, const LossConfig& cfg, const char* who) {
  cfg.validate();
  if (!x.same_shape(y)) throw Error(std::string(who) + ": shape mismatch");
  const auto w = static_cast<std::size_t>(cfg.ssim_window);
  if (x.rows() < w || x.cols() < w) {
    throw Error(std::string(who) + ": input " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                " is smaller than the " + std::to_string(w) + "x" + std::to_string(w) + " window");
  }
}

}  // namespace detail

/// Per-pixel SSIM with Gaussian-weighted local statistics and reflect
/// borders.
inline Matrix ssim_map(const Matrix& x, const Matrix& y, const LossConfig& cfg) {
  detail::check_inputs(x, y, cfg, "ssim_map");
  const detail::GaussianFilter f(cfg.ssim_window, cfg.ssim_sigma);
  const auto m = detail::local_moments(f, x, y);
  const double c1 = cfg.c1(), c2 = cfg.c2();
  Matrix s(x.rows(), x.cols());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double mx = m.mx.data()[k], my = m.my.data()[k];
    const double vx = m.sxx.data()[k] - mx * mx;
    const double vy = m.syy.data()[k] - my * my;
    const double cxy = m.sxy.data()[k] - mx * my;
    s.data()[k] = ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return s;
}

/// 1 - mean SSIM. The gradient is with respect to `pred`.
inline MatrixLoss ssim_loss(const Matrix& pred, const Matrix& target, const LossConfig& cfg, bool with_grad) {
  detail::check_inputs(pred, target, cfg, "ssim_loss");
  const detail::GaussianFilter f(cfg.ssim_window, cfg.ssim_sigma);
  const auto m = detail::local_moments(f, pred, target);
  const double c1 = cfg.c1(), c2 = cfg.c2();
  const auto n = static_cast<double>(pred.size());

  Matrix g_mx(pred.rows(), pred.cols()), g_sxx(pred.rows(), pred.cols()), g_sxy(pred.rows(), pred.cols());
  double sum = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double mx = m.mx.data()[k], my = m.my.data()[k];
    const double vx = m.sxx.data()[k] - mx * mx;
    const double vy = m.syy.data()[k] - my * my;
    const double cxy = m.sxy.data()[k] - mx * my;
    const double a1 = 2 * mx * my + c1, a2 = 2 * cxy + c2;
    const double b1 = mx * mx + my * my + c1, b2 = vx + vy + c2;
    const double s = (a1 * a2) / (b1 * b2);
    sum += s;
    // Partials of s with the filtered quantities mx, sxx, sxy as inputs.
    const double up = -1.0 / n;
    g_mx.data()[k] = up * s * (2 * my / a1 - 2 * my / a2 - 2 * mx / b1 + 2 * mx / b2);
    g_sxx.data()[k] = up * (-s / b2);
    g_sxy.data()[k] = up * (2 * s / a2);
  }
  MatrixLoss out;
  out.value = 1.0 - sum / n;
  if (with_grad) {
    Matrix grad = f.adjoint(g_mx);
    const Matrix bx = f.adjoint(g_sxx);
    const Matrix bxy = f.adjoint(g_sxy);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      grad.data()[k] += 2.0 * pred.data()[k] * bx.data()[k] + target.data()[k] * bxy.data()[k];
    }
    out.grad = std::move(grad);
  }
  return out;
}

}  // namespace tts::losses
