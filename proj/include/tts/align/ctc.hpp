#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tts/error.hpp"
#include "tts/matrix.hpp"
#include "tts/text/inventory.hpp"

namespace tts::align {

using text::PhonemeId;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) with -inf as the log of zero.
inline double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

inline double log_sum_exp(std::span<const double> xs) {
  double hi = kLogZero;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kLogZero) return kLogZero;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// Frames x (V + 1) log-probabilities; the last column is the blank.
struct PosteriorGram {
  Matrix log_probs;

  std::size_t frames() const { return log_probs.rows(); }
  std::size_t classes() const { return log_probs.cols(); }
  PhonemeId blank_id() const { return static_cast<PhonemeId>(log_probs.cols() - 1); }

  /// Checks that every row is a log distribution (logsumexp = 0 within tol).
  void validate(double tol = 1e-4) const {
    if (log_probs.cols() < 2) throw Error("posteriorgram needs at least one phoneme column plus blank");
    for (std::size_t t = 0; t < log_probs.rows(); ++t) {
      const double z = log_sum_exp(log_probs.row(t));
      if (!(std::abs(z) <= tol)) {
        throw Error("posteriorgram row " + std::to_string(t) + " is not normalized (logsumexp " +
                    std::to_string(z) + ")");
      }
    }
  }
};

/// Frames needed to emit `labels`: one per label plus a blank between equal
/// neighbours.
inline std::size_t min_ctc_frames(std::span<const PhonemeId> labels) {
  std::size_t n = labels.size();
  for (std::size_t i = 1; i < labels.size(); ++i) n += labels[i] == labels[i - 1] ? 1 : 0;
  return n;
}

struct CtcResult {
  double loss = 0.0;
  /// d loss / d log_probs, same shape as the posteriorgram.
  std::optional<Matrix> grad;
};

/// Negative log-likelihood of `labels` under CTC, by log-space forward
/// recursion over the blank-interleaved label sequence. With `with_grad`, the
/// backward pass gives d loss / d log_probs[t][k] = -sum of the state
/// occupancies of class k at frame t. If every admissible path has
/// probability zero the loss is +inf and the gradient is zero.
inline CtcResult ctc_loss(const PosteriorGram& posterior, std::span<const PhonemeId> labels, bool with_grad) {
  const Matrix& lp = posterior.log_probs;
  const std::size_t T = lp.rows();
  if (lp.cols() < 2) throw Error("ctc_loss: posteriorgram needs at least one phoneme column plus blank");
  const PhonemeId blank = posterior.blank_id();
  for (PhonemeId y : labels) {
    if (y >= blank) throw Error("ctc_loss: label id " + std::to_string(y) + " outside inventory");
  }
  if (T == 0 || T < min_ctc_frames(labels)) throw Error("ctc_loss: no admissible alignment");

  const std::size_t S = 2 * labels.size() + 1;
  std::vector<PhonemeId> ext(S, blank);
  for (std::size_t i = 0; i < labels.size(); ++i) ext[2 * i + 1] = labels[i];
  // Skip transition s-2 -> s is allowed onto a label that differs from the
  // previous label.
  auto can_skip = [&](std::size_t s) { return s >= 2 && ext[s] != blank && ext[s] != ext[s - 2]; };

  Matrix alpha(T, S, kLogZero);
  alpha(0, 0) = lp(0, ext[0]);
  if (S > 1) alpha(0, 1) = lp(0, ext[1]);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double a = alpha(t - 1, s);
      if (s >= 1) a = log_add(a, alpha(t - 1, s - 1));
      if (can_skip(s)) a = log_add(a, alpha(t - 1, s - 2));
      alpha(t, s) = a == kLogZero ? kLogZero : a + lp(t, ext[s]);
    }
  }
  double log_like = alpha(T - 1, S - 1);
  if (S > 1) log_like = log_add(log_like, alpha(T - 1, S - 2));

  CtcResult result{-log_like, std::nullopt};
  if (!with_grad) return result;

  Matrix grad(T, lp.cols(), 0.0);
  if (log_like == kLogZero) {
    result.grad = std::move(grad);
    return result;
  }
  Matrix beta(T, S, kLogZero);
  beta(T - 1, S - 1) = lp(T - 1, ext[S - 1]);
  if (S > 1) beta(T - 1, S - 2) = lp(T - 1, ext[S - 2]);
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      double b = beta(t + 1, s);
      if (s + 1 < S) b = log_add(b, beta(t + 1, s + 1));
      if (s + 2 < S && can_skip(s + 2)) b = log_add(b, beta(t + 1, s + 2));
      beta(t, s) = b == kLogZero ? kLogZero : b + lp(t, ext[s]);
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      if (alpha(t, s) == kLogZero || beta(t, s) == kLogZero) continue;
      const double occupancy = std::exp(alpha(t, s) + beta(t, s) - lp(t, ext[s]) - log_like);
      grad(t, ext[s]) -= occupancy;
    }
  }
  result.grad = std::move(grad);
  return result;
}

}  // namespace tts::align
