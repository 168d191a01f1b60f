#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "tts/align/durations.hpp"
#include "tts/error.hpp"
#include "tts/matrix.hpp"

namespace tts::upsample {

/// Offset of every frame inside its phoneme's segment: d = [2, 3] gives
/// [0, 1, 0, 1, 2].
inline std::vector<std::size_t> phoneme_relative_positions(const align::DurationSequence& d) {
  if (d.frames.empty()) throw Error("phoneme_relative_positions: empty duration sequence");
  std::vector<std::size_t> pos;
  pos.reserve(d.total());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.frames[i] == 0) throw Error("phoneme_relative_positions: duration " + std::to_string(i) + " is zero");
    for (std::size_t k = 0; k < d.frames[i]; ++k) pos.push_back(k);
  }
  return pos;
}

/// E[t, 2k] = sin(pos / 10000^(2k / dim)), E[t, 2k + 1] = cos(same).
inline Matrix sinusoidal_embedding(std::span<const std::size_t> positions, std::size_t dim) {
  if (dim == 0 || dim % 2 != 0) throw Error("sinusoidal_embedding: dim must be a positive even number");
  Matrix e(positions.size(), dim);
  for (std::size_t t = 0; t < positions.size(); ++t) {
    const auto pos = static_cast<double>(positions[t]);
    for (std::size_t k = 0; k < dim; k += 2) {
      const double angle = pos / std::pow(10000.0, static_cast<double>(k) / static_cast<double>(dim));
      e(t, k) = std::sin(angle);
      e(t, k + 1) = std::cos(angle);
    }
  }
  return e;
}

}  // namespace tts::upsample
