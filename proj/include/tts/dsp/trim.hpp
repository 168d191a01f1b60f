#pragma once

#include <algorithm>
#include <cmath>

#include "tts/dsp/waveform.hpp"
#include "tts/error.hpp"

namespace tts::dsp {

inline constexpr double kTrimFrameSeconds = 0.010;

/// Removes leading and trailing 10 ms frames whose peak amplitude is below
/// peak(w) * 10^(threshold_db / 20). Interior frames are kept. All-silent
/// input yields an empty waveform.
inline Waveform trim_silence(const Waveform& w, double threshold_db) {
  if (!(threshold_db < 0.0)) throw Error("trim_silence: threshold_db must be negative");
  if (w.sample_rate <= 0) throw Error("trim_silence: invalid sample rate");
  Waveform out{{}, w.sample_rate};
  double peak = 0.0;
  for (double s : w.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0.0) return out;

  const double threshold = peak * std::pow(10.0, threshold_db / 20.0);
  const auto frame = static_cast<std::size_t>(
      std::max(1L, std::lround(w.sample_rate * kTrimFrameSeconds)));
  const std::size_t n = w.samples.size();
  const std::size_t n_frames = (n + frame - 1) / frame;
  auto loud = [&](std::size_t f) {
    const std::size_t end = std::min(n, (f + 1) * frame);
    double m = 0.0;
    for (std::size_t k = f * frame; k < end; ++k) m = std::max(m, std::abs(w.samples[k]));
    return m >= threshold;
  };

  std::size_t first = 0;
  while (first < n_frames && !loud(first)) ++first;
  std::size_t last = n_frames;
  while (last > first && !loud(last - 1)) --last;
  const std::size_t begin = first * frame;
  const std::size_t end = std::min(n, last * frame);
  out.samples.assign(w.samples.begin() + static_cast<long>(begin), w.samples.begin() + static_cast<long>(end));
  return out;
}

}  // namespace tts::dsp
