#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tts/dsp/fft.hpp"
#include "tts/dsp/waveform.hpp"
#include "tts/error.hpp"
#include "tts/matrix.hpp"

namespace tts::dsp {

/// Feature extraction settings. Defaults give 22.05 kHz, 1024-point Hann
/// STFT, 276-sample hop and 100 log-mel bins normalized into [0, 4].
struct FeatureConfig {
  int target_rate = 22050;
  int n_fft = 1024;
  int win_length = 1024;
  int hop_length = 276;
  int n_mels = 100;
  double fmin = 0.0;
  double fmax = 11025.0;
  double log_floor = 1e-5;
  double norm_lo = 0.0;
  double norm_hi = 4.0;
  double trim_threshold_db = -40.0;

  void validate() const {
    auto fail = [](const std::string& m) { throw Error("feature config: " + m); };
    if (target_rate <= 0) fail("target_rate must be positive");
    if (n_fft <= 0 || win_length <= 0 || hop_length <= 0 || n_mels <= 0) fail("sizes must be positive");
    if (win_length > n_fft) fail("win_length must not exceed n_fft");
    if (hop_length > win_length) fail("hop_length must not exceed win_length");
    if (!(fmin >= 0.0 && fmin < fmax)) fail("need 0 <= fmin < fmax");
    if (fmax > target_rate / 2.0) fail("fmax must not exceed target_rate / 2");
    if (!(log_floor > 0.0)) fail("log_floor must be positive");
    if (!(norm_lo < norm_hi)) fail("norm_lo must be below norm_hi");
    if (!(trim_threshold_db < 0.0)) fail("trim_threshold_db must be negative");
  }
};

/// Frames x mel bins. `normalized` tells whether values were min-max mapped
/// into [config.norm_lo, config.norm_hi].
struct MelSpectrogram {
  Matrix values;
  bool normalized = false;
  FeatureConfig config;

  std::size_t frames() const { return values.rows(); }
  std::size_t bins() const { return values.cols(); }
};

inline double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

/// Triangular HTK-scale filterbank, each filter scaled to unit area in Hz.
class MelFilterbank {
 public:
  MelFilterbank(int n_mels, int n_fft, int sample_rate, double fmin, double fmax)
      : weights_(static_cast<std::size_t>(n_mels), static_cast<std::size_t>(n_fft / 2 + 1)) {
    const double mel_lo = hz_to_mel(fmin);
    const double mel_hi = hz_to_mel(fmax);
    edges_.resize(static_cast<std::size_t>(n_mels + 2));
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      edges_[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1));
    }
    const double bin_hz = static_cast<double>(sample_rate) / n_fft;
    for (std::size_t m = 0; m < weights_.rows(); ++m) {
      const double lo = edges_[m], c = edges_[m + 1], hi = edges_[m + 2];
      const double scale = 2.0 / (hi - lo);
      for (std::size_t k = 0; k < weights_.cols(); ++k) {
        weights_(m, k) = scale * triangle(k * bin_hz, lo, c, hi);
      }
    }
  }

  static double triangle(double f, double lo, double c, double hi) {
    if (f <= lo || f >= hi) return 0.0;
    return f <= c ? (f - lo) / (c - lo) : (hi - f) / (hi - c);
  }

  /// Continuous response of filter m at frequency f (same scaling as weights).
  double response(std::size_t m, double f) const {
    const double lo = edges_[m], c = edges_[m + 1], hi = edges_[m + 2];
    return 2.0 / (hi - lo) * triangle(f, lo, c, hi);
  }

  std::size_t size() const { return weights_.rows(); }
  double center_hz(std::size_t m) const { return edges_[m + 1]; }
  const Matrix& weights() const { return weights_; }

 private:
  Matrix weights_;
  std::vector<double> edges_;
};

/// Mirror index without edge repetition, valid for any offset.
inline std::size_t reflect_index(long i, std::size_t n) {
  if (n == 1) return 0;
  const long period = 2 * (static_cast<long>(n) - 1);
  long r = i % period;
  if (r < 0) r += period;
  return static_cast<std::size_t>(r < static_cast<long>(n) ? r : period - r);
}

/// Periodic Hann window of `win_length`, zero-padded and centered in `n_fft`.
inline std::vector<double> hann_window(int win_length, int n_fft) {
  std::vector<double> w(static_cast<std::size_t>(n_fft), 0.0);
  const int offset = (n_fft - win_length) / 2;
  for (int i = 0; i < win_length; ++i) {
    w[static_cast<std::size_t>(offset + i)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / win_length);
  }
  return w;
}

inline std::size_t frame_count(std::size_t n_samples, int hop_length) {
  return 1 + n_samples / static_cast<std::size_t>(hop_length);
}

/// Log-mel spectrogram (unnormalized): reflect-padded centered STFT
/// magnitude, mel projection, natural log of max(value, log_floor).
inline MelSpectrogram mel_spectrogram(const Waveform& w, const FeatureConfig& cfg) {
  cfg.validate();
  if (w.sample_rate != cfg.target_rate) {
    throw Error("mel_spectrogram: waveform rate " + std::to_string(w.sample_rate) + " != target_rate " +
                std::to_string(cfg.target_rate));
  }
  if (w.samples.size() < static_cast<std::size_t>(cfg.hop_length)) {
    throw Error("mel_spectrogram: waveform shorter than one hop");
  }
  const std::size_t n = w.samples.size();
  const std::size_t frames = frame_count(n, cfg.hop_length);
  const MelFilterbank fb(cfg.n_mels, cfg.n_fft, cfg.target_rate, cfg.fmin, cfg.fmax);
  const std::vector<double> window = hann_window(cfg.win_length, cfg.n_fft);
  RealFft fft(cfg.n_fft);

  std::vector<double> frame(static_cast<std::size_t>(cfg.n_fft));
  std::vector<double> mag(fft.bins());
  MelSpectrogram out{Matrix(frames, static_cast<std::size_t>(cfg.n_mels)), false, cfg};
  const long pad = cfg.n_fft / 2;
  for (std::size_t t = 0; t < frames; ++t) {
    const long start = static_cast<long>(t) * cfg.hop_length - pad;
    for (std::size_t j = 0; j < frame.size(); ++j) {
      frame[j] = window[j] * w.samples[reflect_index(start + static_cast<long>(j), n)];
    }
    fft.magnitude(frame, mag);
    for (std::size_t m = 0; m < fb.size(); ++m) {
      const auto weights = fb.weights().row(m);
      double acc = 0.0;
      for (std::size_t k = 0; k < mag.size(); ++k) acc += weights[k] * mag[k];
      out.values(t, m) = std::log(std::max(acc, cfg.log_floor));
    }
  }
  return out;
}

}  // namespace tts::dsp
