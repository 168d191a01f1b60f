#pragma once

#include <span>
#include <vector>

#include "tts/align/ctc.hpp"
#include "tts/align/durations.hpp"
#include "tts/error.hpp"

namespace tts::align {

/// Highest-scoring split of the T frames into |labels| non-empty contiguous
/// segments, scoring frame t in segment i with log_probs[t][labels[i]]. The
/// blank column is not used.
///
/// Ties go to the segmentation whose last boundary is latest, then whose
/// second-to-last boundary is latest, and so on: earlier phonemes keep a
/// frame rather than hand it to the next one. Path scores are accumulated
/// front to back, so equal-score paths compare exactly.
inline AlignmentPath best_monotonic_path(const PosteriorGram& posterior, std::span<const PhonemeId> labels) {
  const Matrix& lp = posterior.log_probs;
  const std::size_t T = lp.rows();
  const std::size_t N = labels.size();
  if (N == 0) throw Error("best_monotonic_path: empty label sequence");
  if (T < N) throw Error("best_monotonic_path: insufficient frames (" + std::to_string(T) + " < " +
                         std::to_string(N) + ")");
  for (PhonemeId y : labels) {
    if (y >= lp.cols()) throw Error("best_monotonic_path: label id " + std::to_string(y) + " outside posteriorgram");
  }

  // best(t, n): best score of frames 0..t with frame t in segment n.
  Matrix best(T, N, kLogZero);
  best(0, 0) = lp(0, labels[0]);
  for (std::size_t t = 1; t < T; ++t) {
    const std::size_t n_lo = N > T - t ? N - (T - t) : 0;
    const std::size_t n_hi = std::min(t, N - 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      double prev = best(t - 1, n);
      if (n > 0) prev = std::max(prev, best(t - 1, n - 1));
      best(t, n) = prev + lp(t, labels[n]);
    }
  }

  AlignmentPath path;
  path.assignment.assign(T, 0);
  path.score = best(T - 1, N - 1);
  std::size_t n = N - 1;
  for (std::size_t t = T - 1; t > 0; --t) {
    path.assignment[t] = n;
    if (n > 0 && (n == t || best(t - 1, n - 1) >= best(t - 1, n))) --n;
  }
  path.assignment[0] = n;
  return path;
}

}  // namespace tts::align
