#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "tts/error.hpp"

namespace tts::align {

/// Frames per phoneme.
struct DurationSequence {
  std::vector<std::size_t> frames;

  std::size_t size() const { return frames.size(); }
  std::size_t total() const { return std::accumulate(frames.begin(), frames.end(), std::size_t{0}); }
  friend bool operator==(const DurationSequence&, const DurationSequence&) = default;
};

/// Frame-to-label assignment. Valid paths start at 0, never decrease and
/// advance by at most one label per frame.
struct AlignmentPath {
  std::vector<std::size_t> assignment;
  double score = 0.0;
};

inline void validate_path(const std::vector<std::size_t>& assignment) {
  if (assignment.empty()) throw Error("alignment path is empty");
  if (assignment.front() != 0) throw Error("alignment path must start at phoneme 0");
  for (std::size_t t = 1; t < assignment.size(); ++t) {
    if (assignment[t] < assignment[t - 1]) {
      throw Error("alignment path is non-monotonic at frame " + std::to_string(t));
    }
    if (assignment[t] > assignment[t - 1] + 1) {
      throw Error("phoneme index skipped at frame " + std::to_string(t));
    }
  }
}

inline DurationSequence durations_from_path(const AlignmentPath& path) {
  validate_path(path.assignment);
  DurationSequence d;
  d.frames.assign(path.assignment.back() + 1, 0);
  for (std::size_t a : path.assignment) ++d.frames[a];
  return d;
}

}  // namespace tts::align
