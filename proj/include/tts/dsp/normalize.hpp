#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "tts/dsp/mel.hpp"
#include "tts/error.hpp"

namespace tts::dsp {

/// Corpus-level log-mel extrema used for min-max normalization.
struct NormStats {
  double min_val = std::numeric_limits<double>::infinity();
  double max_val = -std::numeric_limits<double>::infinity();

  void include(const Matrix& m) {
    for (double v : m.data()) {
      min_val = std::min(min_val, v);
      max_val = std::max(max_val, v);
    }
  }
  void merge(const NormStats& o) {
    min_val = std::min(min_val, o.min_val);
    max_val = std::max(max_val, o.max_val);
  }
  bool valid() const { return std::isfinite(min_val) && std::isfinite(max_val) && min_val < max_val; }

  /// `min=<value>` / `max=<value>` lines, printed with round-trip precision.
  std::string serialize() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "min=%.17g\nmax=%.17g\n", min_val, max_val);
    return buf;
  }

  static NormStats parse(const std::string& text) {
    NormStats s;
    bool have_min = false, have_max = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error("norm stats: malformed line '" + line + "'");
      const std::string key = line.substr(0, eq);
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(line.substr(eq + 1), &used);
        if (used != line.size() - eq - 1) throw Error("trailing characters");
      } catch (const std::exception&) {
        throw Error("norm stats: bad number in '" + line + "'");
      }
      if (key == "min") {
        s.min_val = v;
        have_min = true;
      } else if (key == "max") {
        s.max_val = v;
        have_max = true;
      } else {
        throw Error("norm stats: unknown key '" + key + "'");
      }
    }
    if (!have_min || !have_max) throw Error("norm stats: need both min and max");
    if (!s.valid()) throw Error("norm stats: min must be below max");
    return s;
  }
};

/// v' = lo + (hi - lo) * (clamp(v, min, max) - min) / (max - min)
inline MelSpectrogram normalize_mel(const MelSpectrogram& m, const NormStats& stats) {
  if (!stats.valid()) throw Error("normalize_mel: degenerate stats (need finite min < max)");
  if (m.normalized) throw Error("normalize_mel: spectrogram already normalized");
  const double lo = m.config.norm_lo, hi = m.config.norm_hi;
  const double span = stats.max_val - stats.min_val;
  MelSpectrogram out = m;
  for (double& v : out.values.data()) {
    const double c = std::clamp(v, stats.min_val, stats.max_val);
    v = std::clamp(lo + (hi - lo) * (c - stats.min_val) / span, lo, hi);
  }
  out.normalized = true;
  return out;
}

inline MelSpectrogram denormalize_mel(const MelSpectrogram& m, const NormStats& stats) {
  if (!stats.valid()) throw Error("denormalize_mel: degenerate stats (need finite min < max)");
  if (!m.normalized) throw Error("denormalize_mel: spectrogram is not normalized");
  const double lo = m.config.norm_lo, hi = m.config.norm_hi;
  MelSpectrogram out = m;
  for (double& v : out.values.data()) {
    v = stats.min_val + (v - lo) * (stats.max_val - stats.min_val) / (hi - lo);
  }
  out.normalized = false;
  return out;
}

}  // namespace tts::dsp
