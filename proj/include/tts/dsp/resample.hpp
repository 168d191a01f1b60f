#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "tts/dsp/waveform.hpp"
#include "tts/error.hpp"

namespace tts::dsp {

/// Windowed-sinc design used by `resample`.
struct ResamplerDesign {
  int zero_crossings = 24;  // sinc lobes on each side, at the lower of the two rates
  double rolloff = 0.96;    // cutoff as a fraction of the lower Nyquist frequency
  double kaiser_beta = 8.6;
};

/// Polyphase rational-ratio resampler. Output sample n sits at input time
/// n * source / target; each polyphase branch is normalized to unit DC gain.
class Resampler {
 public:
  Resampler(int source_rate, int target_rate, ResamplerDesign design = {})
      : design_(design) {
    if (source_rate <= 0 || target_rate <= 0) throw Error("resample: rates must be positive");
    const int g = std::gcd(source_rate, target_rate);
    up_ = target_rate / g;
    down_ = source_rate / g;
    cutoff_ = std::min(1.0, static_cast<double>(up_) / down_) * design_.rolloff;
    half_width_ = static_cast<int>(std::ceil(design_.zero_crossings / cutoff_));
    if (up_ <= kMaxCachedPhases) {
      phases_.reserve(static_cast<std::size_t>(up_));
      for (long p = 0; p < up_; ++p) phases_.push_back(taps(static_cast<double>(p) / up_));
    }
  }

  std::size_t output_length(std::size_t n) const {
    const auto num = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(up_);
    return static_cast<std::size_t>((num + down_ - 1) / down_);
  }

  std::vector<double> process(const std::vector<double>& in) const {
    const std::size_t n_out = output_length(in.size());
    std::vector<double> out(n_out, 0.0);
    std::vector<double> scratch;
    const auto n_in = static_cast<long>(in.size());
    for (std::size_t n = 0; n < n_out; ++n) {
      const auto num = static_cast<std::int64_t>(n) * down_;
      const long base = static_cast<long>(num / up_);
      const long phase = static_cast<long>(num % up_);
      const std::vector<double>* h;
      if (!phases_.empty()) {
        h = &phases_[static_cast<std::size_t>(phase)];
      } else {
        scratch = taps(static_cast<double>(phase) / up_);
        h = &scratch;
      }
      double acc = 0.0;
      // taps[j] multiplies input sample base + j - half_width_ + 1
      const long first = base - half_width_ + 1;
      for (std::size_t j = 0; j < h->size(); ++j) {
        const long k = first + static_cast<long>(j);
        if (k >= 0 && k < n_in) acc += (*h)[j] * in[static_cast<std::size_t>(k)];
      }
      out[n] = acc;
    }
    return out;
  }

  long up() const { return up_; }
  long down() const { return down_; }
  int half_width() const { return half_width_; }

 private:
  static constexpr long kMaxCachedPhases = 4096;

  // Taps for a fractional offset frac in [0, 1) between output and the input
  // sample `base`.
  std::vector<double> taps(double frac) const {
    const double i0_beta = std::cyl_bessel_i(0.0, design_.kaiser_beta);
    std::vector<double> h(static_cast<std::size_t>(2 * half_width_));
    double sum = 0.0;
    for (int j = 0; j < 2 * half_width_; ++j) {
      const double tau = static_cast<double>(j - half_width_ + 1) - frac;
      const double x = cutoff_ * tau;
      const double sinc = x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
      const double r = tau / half_width_;
      const double win =
          std::abs(r) >= 1.0 ? 0.0 : std::cyl_bessel_i(0.0, design_.kaiser_beta * std::sqrt(1.0 - r * r)) / i0_beta;
      h[static_cast<std::size_t>(j)] = cutoff_ * sinc * win;
      sum += h[static_cast<std::size_t>(j)];
    }
    for (double& v : h) v /= sum;
    return h;
  }

  ResamplerDesign design_;
  long up_ = 1;
  long down_ = 1;
  double cutoff_ = 1.0;
  int half_width_ = 1;
  std::vector<std::vector<double>> phases_;
};

/// Resamples to `target_rate`; output length is ceil(N * target / source).
/// Identical rates return the input unchanged.
inline Waveform resample(const Waveform& w, int target_rate, ResamplerDesign design = {}) {
  if (w.sample_rate <= 0 || target_rate <= 0) throw Error("resample: rates must be positive");
  if (w.sample_rate == target_rate) return w;
  Resampler r(w.sample_rate, target_rate, design);
  return Waveform{r.process(w.samples), target_rate};
}

}  // namespace tts::dsp
