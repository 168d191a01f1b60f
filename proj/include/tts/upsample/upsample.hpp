#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "tts/align/durations.hpp"
#include "tts/error.hpp"
#include "tts/matrix.hpp"

namespace tts::upsample {

/// Real-valued durations and Gaussian ranges (both in frames) per phoneme.
struct UpsampleSpec {
  std::vector<double> durations;
  std::vector<double> ranges;

  std::size_t size() const { return durations.size(); }

  /// c_i = sum_{j <= i} d_j - d_i / 2
  std::vector<double> centers() const {
    std::vector<double> c(durations.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < durations.size(); ++i) {
      acc += durations[i];
      c[i] = acc - durations[i] / 2.0;
    }
    return c;
  }

  void validate() const {
    if (durations.empty()) throw Error("upsample spec: no phonemes");
    if (ranges.size() != durations.size()) throw Error("upsample spec: ranges and durations differ in length");
    for (std::size_t i = 0; i < durations.size(); ++i) {
      if (!(durations[i] > 0.0) || !std::isfinite(durations[i])) {
        throw Error("upsample spec: duration " + std::to_string(i) + " must be positive");
      }
      if (!(ranges[i] > 0.0) || !std::isfinite(ranges[i])) {
        throw Error("upsample spec: range " + std::to_string(i) + " must be positive");
      }
    }
  }
};

/// Default range when none is predicted: max(d / 3, 0.1).
inline double default_range(double duration) { return std::max(duration / 3.0, 0.1); }

inline UpsampleSpec make_spec(std::vector<double> durations, std::optional<std::vector<double>> ranges = std::nullopt) {
  UpsampleSpec spec;
  if (ranges) {
    spec.ranges = std::move(*ranges);
  } else {
    spec.ranges.reserve(durations.size());
    for (double d : durations) spec.ranges.push_back(default_range(d));
  }
  spec.durations = std::move(durations);
  spec.validate();
  return spec;
}

inline UpsampleSpec make_spec(const align::DurationSequence& d) {
  std::vector<double> real(d.frames.begin(), d.frames.end());
  return make_spec(std::move(real));
}

/// round(sum d), halves rounding up.
inline std::size_t output_length(const std::vector<double>& durations) {
  double sum = 0.0;
  for (double d : durations) sum += d;
  return static_cast<std::size_t>(std::max(0.0, std::floor(sum + 0.5)));
}

/// Length regulator: row i of `hidden` repeated durations[i] times.
inline Matrix repeat_upsample(const Matrix& hidden, const align::DurationSequence& d) {
  if (d.size() != hidden.rows()) {
    throw Error("repeat_upsample: " + std::to_string(d.size()) + " durations for " +
                std::to_string(hidden.rows()) + " hidden rows");
  }
  Matrix out(d.total(), hidden.cols());
  std::size_t t = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t r = 0; r < d.frames[i]; ++r, ++t) {
      std::copy(hidden.row(i).begin(), hidden.row(i).end(), out.row(t).begin());
    }
  }
  return out;
}

struct GaussianUpsampleResult {
  Matrix frames;   // T x D
  Matrix weights;  // T x N, rows sum to 1
};

namespace detail {

// Softmax over phonemes of -(p - c_i)^2 / (2 sigma_i^2) at p = t + 0.5.
inline Matrix gaussian_weights(const UpsampleSpec& spec, std::size_t frames) {
  const std::vector<double> c = spec.centers();
  const std::size_t n = spec.size();
  Matrix w(frames, n);
  std::vector<double> logits(n);
  for (std::size_t t = 0; t < frames; ++t) {
    const double p = static_cast<double>(t) + 0.5;
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (p - c[i]) / spec.ranges[i];
      logits[i] = -0.5 * z * z;
      hi = std::max(hi, logits[i]);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w(t, i) = std::exp(logits[i] - hi);
      sum += w(t, i);
    }
    for (std::size_t i = 0; i < n; ++i) w(t, i) /= sum;
  }
  return w;
}

}  // namespace detail

/// Gaussian upsampling: frame t is the weighted sum of hidden rows with
/// softmax-normalized Gaussian weights centered on each phoneme's midpoint.
inline GaussianUpsampleResult gaussian_upsample(const Matrix& hidden, const UpsampleSpec& spec) {
  spec.validate();
  if (spec.size() != hidden.rows()) throw Error("gaussian_upsample: spec and hidden rows differ in length");
  if (hidden.cols() == 0) throw Error("gaussian_upsample: hidden vectors are empty");
  const std::size_t frames = output_length(spec.durations);
  if (frames == 0) throw Error("gaussian_upsample: total duration rounds to zero frames");

  GaussianUpsampleResult out{Matrix(frames, hidden.cols(), 0.0), detail::gaussian_weights(spec, frames)};
  for (std::size_t t = 0; t < frames; ++t) {
    auto dst = out.frames.row(t);
    for (std::size_t i = 0; i < hidden.rows(); ++i) {
      const double w = out.weights(t, i);
      const auto src = hidden.row(i);
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += w * src[k];
    }
  }
  return out;
}

struct GaussianUpsampleGrad {
  Matrix hidden;                   // N x D
  std::vector<double> durations;  // N
  std::vector<double> ranges;     // N
};

/// Vector-Jacobian product of gaussian_upsample given dL/dframes. The frame
/// count is piecewise constant in the durations and is held fixed.
inline GaussianUpsampleGrad gaussian_upsample_backward(const Matrix& hidden, const UpsampleSpec& spec,
                                                       const Matrix& grad_frames) {
  spec.validate();
  const std::size_t n = spec.size();
  const std::size_t frames = output_length(spec.durations);
  if (hidden.rows() != n) throw Error("gaussian_upsample_backward: spec and hidden rows differ in length");
  if (grad_frames.rows() != frames || grad_frames.cols() != hidden.cols()) {
    throw Error("gaussian_upsample_backward: gradient shape does not match output");
  }
  const Matrix w = detail::gaussian_weights(spec, frames);
  const std::vector<double> c = spec.centers();

  GaussianUpsampleGrad g{Matrix(n, hidden.cols(), 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::vector<double> grad_centers(n, 0.0);
  std::vector<double> gw(n);
  for (std::size_t t = 0; t < frames; ++t) {
    const double p = static_cast<double>(t) + 0.5;
    const auto go = grad_frames.row(t);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto h = hidden.row(i);
      double dot = 0.0;
      for (std::size_t k = 0; k < go.size(); ++k) {
        dot += go[k] * h[k];
        g.hidden(i, k) += w(t, i) * go[k];
      }
      gw[i] = dot;
      mean += w(t, i) * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double g_logit = w(t, i) * (gw[i] - mean);
      const double diff = p - c[i];
      const double s = spec.ranges[i];
      grad_centers[i] += g_logit * diff / (s * s);
      g.ranges[i] += g_logit * diff * diff / (s * s * s);
    }
  }
  // dc_i/dd_j = 1 for j < i, 1/2 for j = i.
  double suffix = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    g.durations[j] = suffix + 0.5 * grad_centers[j];
    suffix += grad_centers[j];
  }
  return g;
}

}  // namespace tts::upsample
