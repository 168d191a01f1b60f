#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tts/align/ctc.hpp"
#include "tts/align/durations.hpp"
#include "tts/align/monotonic_path.hpp"

using namespace tts;
using namespace tts::align;
using tts::oracle::uniform_int;

namespace {

Matrix from_probs(std::vector<std::vector<double>> p) {
  Matrix m(p.size(), p[0].size());
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (std::size_t k = 0; k < p[t].size(); ++k) m(t, k) = std::log(p[t][k]);
  }
  return m;
}

std::vector<PhonemeId> random_labels(std::mt19937& rng, std::size_t n, std::size_t v) {
  std::vector<PhonemeId> y(n);
  for (auto& l : y) l = static_cast<PhonemeId>(rng() % v);
  return y;
}

}  // namespace

TEST(CtcLoss, SingleFrameSingleLabel) {
  const Matrix lp = from_probs({{0.6, 0.1, 0.3}});
  EXPECT_NEAR(ctc_loss({lp}, std::vector<PhonemeId>{0}, false).loss, -std::log(0.6), 1e-12);
}

TEST(CtcLoss, TwoFramesMatchesClosedForm) {
  const Matrix lp = from_probs({{0.5, 0.2, 0.3}, {0.4, 0.1, 0.5}});
  // paths collapsing to [a]: aa, ∅a, a∅
  const double expected = -std::log(0.5 * 0.4 + 0.3 * 0.4 + 0.5 * 0.5);
  EXPECT_NEAR(ctc_loss({lp}, std::vector<PhonemeId>{0}, false).loss, expected, 1e-12);
}

TEST(CtcLoss, RepeatedLabelMatchesEnumeration) {
  std::mt19937 rng(1);
  const Matrix lp = oracle::random_log_softmax(rng, 4, 3);
  const std::vector<PhonemeId> y = {0, 0};
  EXPECT_NEAR(ctc_loss({lp}, y, false).loss, oracle::brute_force_ctc(lp, y), 1e-6);
}

TEST(CtcLoss, Errors) {
  std::mt19937 rng(2);
  const Matrix lp = oracle::random_log_softmax(rng, 2, 3);
  EXPECT_THROW(ctc_loss({lp}, std::vector<PhonemeId>{0, 0}, false), Error);  // needs 3 frames
  EXPECT_THROW(ctc_loss({lp}, std::vector<PhonemeId>{0, 1, 0}, false), Error);
  EXPECT_THROW(ctc_loss({lp}, std::vector<PhonemeId>{2}, false), Error);  // blank id
  EXPECT_NO_THROW(ctc_loss({lp}, std::vector<PhonemeId>{0, 1}, false));
}

TEST(CtcLoss, ZeroProbabilitySentinels) {
  const double inf = std::numeric_limits<double>::infinity();
  Matrix lp(2, 3, -inf);
  lp(0, 2) = 0.0;
  lp(1, 2) = 0.0;
  const auto r = ctc_loss({lp}, std::vector<PhonemeId>{0}, true);
  EXPECT_EQ(r.loss, inf);
  for (double g : r.grad->data()) EXPECT_EQ(g, 0.0);
  lp(1, 2) = -inf;
  lp(1, 0) = 0.0;
  EXPECT_NEAR(ctc_loss({lp}, std::vector<PhonemeId>{0}, false).loss, 0.0, 1e-12);
}

TEST(CtcLoss, OracleEquivalenceRandom) {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t v = uniform_int(rng, 1, 4);
    const std::size_t n = uniform_int(rng, 1, 3);
    const auto y = random_labels(rng, n, v);
    const std::size_t t_min = std::max<std::size_t>(1, min_ctc_frames(y));
    if (t_min > 6) continue;
    const std::size_t T = uniform_int(rng, t_min, 6);
    const Matrix lp = oracle::random_log_softmax(rng, T, v + 1);
    const double oracle = oracle::brute_force_ctc(lp, y);
    ASSERT_LE(oracle::rel_err(ctc_loss({lp}, y, false).loss, oracle, 1e-12), 1e-6);
  }
}

TEST(CtcLoss, GradientMatchesFiniteDifferences) {
  std::mt19937 rng(4);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t v = uniform_int(rng, 2, 5);
    const auto y = random_labels(rng, uniform_int(rng, 1, 4), v);
    const std::size_t T = min_ctc_frames(y) + uniform_int(rng, 0, 5);
    const Matrix lp = oracle::random_log_softmax(rng, T, v + 1);
    const Matrix g = *ctc_loss({lp}, y, true).grad;
    for (std::size_t t = 0; t < T; ++t) {
      double row = 0.0;
      for (std::size_t k = 0; k <= v; ++k) row += g(t, k);
      for (std::size_t k = 0; k <= v; ++k) {
        // FD perturbs one log-prob and renormalizes the row, so compare
        // against the gradient projected onto that constraint.
        const double projected = g(t, k) - std::exp(lp(t, k)) * row;
        const double fd = oracle::central_difference(
            [&](double x) {
              Matrix p = lp;
              p(t, k) = x;
              return ctc_loss({oracle::renormalize_rows(p)}, y, false).loss;
            },
            lp(t, k), 1e-4);
        ASSERT_LE(oracle::rel_err(projected, fd), 1e-4) << t << "," << k;
      }
    }
  }
}

TEST(CtcLoss, RawGradientIsNegativeOccupancy) {
  // Occupancies over classes sum to one per frame.
  std::mt19937 rng(5);
  const Matrix lp = oracle::random_log_softmax(rng, 6, 4);
  const Matrix g = *ctc_loss({lp}, std::vector<PhonemeId>{0, 2, 1}, true).grad;
  for (std::size_t t = 0; t < 6; ++t) {
    double row = 0.0;
    for (double v : g.row(t)) row += v;
    EXPECT_NEAR(row, -1.0, 1e-12);
  }
}

TEST(PosteriorGram, ValidateRows) {
  std::mt19937 rng(6);
  PosteriorGram p{oracle::random_log_softmax(rng, 5, 4)};
  EXPECT_NO_THROW(p.validate());
  p.log_probs(2, 1) += 0.01;
  EXPECT_THROW(p.validate(), Error);
}

TEST(BestMonotonicPath, SingleSegmentation) {
  std::mt19937 rng(7);
  const Matrix lp = oracle::random_log_softmax(rng, 3, 4);
  const auto one = best_monotonic_path({lp}, std::vector<PhonemeId>{2});
  EXPECT_EQ(one.assignment, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(durations_from_path(one).frames, (std::vector<std::size_t>{3}));
  const auto diag = best_monotonic_path({lp}, std::vector<PhonemeId>{1, 0, 1});
  EXPECT_EQ(diag.assignment, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(BestMonotonicPath, HandBuiltSwitchAtFrameThree) {
  const Matrix lp = from_probs({{0.8, 0.1, 0.1},
                                {0.7, 0.2, 0.1},
                                {0.6, 0.3, 0.1},
                                {0.2, 0.7, 0.1},
                                {0.1, 0.8, 0.1}});
  const std::vector<PhonemeId> y = {0, 1};
  const auto oracle = oracle::brute_force_segmentation(lp, {0, 1});
  ASSERT_EQ(oracle.assignment, (std::vector<std::size_t>{0, 0, 0, 1, 1}));
  const auto path = best_monotonic_path({lp}, y);
  EXPECT_EQ(path.assignment, oracle.assignment);
  EXPECT_EQ(path.score, oracle.score);
}

TEST(BestMonotonicPath, TiesGoToEarlierPhonemes) {
  const Matrix flat(4, 3, std::log(1.0 / 3.0));
  const auto path = best_monotonic_path({flat}, std::vector<PhonemeId>{0, 1});
  EXPECT_EQ(path.assignment, (std::vector<std::size_t>{0, 0, 0, 1}));
  const auto three = best_monotonic_path({Matrix(6, 3, -1.0)}, std::vector<PhonemeId>{0, 1, 0});
  EXPECT_EQ(three.assignment, (std::vector<std::size_t>{0, 0, 0, 0, 1, 2}));
}

TEST(BestMonotonicPath, InsufficientFrames) {
  EXPECT_THROW(best_monotonic_path({Matrix(2, 3, -1.0)}, std::vector<PhonemeId>{0, 1, 0}), Error);
  EXPECT_THROW(best_monotonic_path({Matrix(2, 3, -1.0)}, std::vector<PhonemeId>{}), Error);
}

TEST(BestMonotonicPath, OracleEquivalenceRandom) {
  std::mt19937 rng(8);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = uniform_int(rng, 1, 5);
    const std::size_t T = uniform_int(rng, n, 10);
    const std::size_t v = uniform_int(rng, 1, 4);
    const auto y = random_labels(rng, n, v);
    Matrix lp = oracle::random_log_softmax(rng, T, v + 1);
    if (iter % 2 == 0) {
      // integer scores force many exact ties
      for (double& x : lp.data()) x = -static_cast<double>(rng() % 3);
    }
    const auto oracle = oracle::brute_force_segmentation(lp, {y.begin(), y.end()});
    const auto path = best_monotonic_path({lp}, y);
    ASSERT_EQ(path.score, oracle.score);
    ASSERT_EQ(path.assignment, oracle.assignment);
  }
}

TEST(BestMonotonicPath, CertainFrameNeverLowersScore) {
  std::mt19937 rng(9);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = uniform_int(rng, 1, 5);
    const std::size_t T = uniform_int(rng, n, 12);
    const auto y = random_labels(rng, n, 4);
    const Matrix lp = oracle::random_log_softmax(rng, T, 5);
    Matrix longer(T + 1, 5, -std::numeric_limits<double>::infinity());
    std::copy(lp.data().begin(), lp.data().end(), longer.data().begin());
    longer(T, y.back()) = 0.0;
    ASSERT_GE(best_monotonic_path({longer}, y).score, best_monotonic_path({lp}, y).score);
  }
}

TEST(DurationsFromPath, Counting) {
  EXPECT_EQ(durations_from_path({{0, 0, 1, 1, 1}}).frames, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(durations_from_path({{0}}).frames, (std::vector<std::size_t>{1}));
}

TEST(DurationsFromPath, RejectsInvalidPaths) {
  try {
    durations_from_path({{0, 0, 2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("phoneme index skipped"), std::string::npos);
  }
  EXPECT_THROW(durations_from_path({{0, 1, 0}}), Error);
  EXPECT_THROW(durations_from_path({{1, 1}}), Error);
  EXPECT_THROW(durations_from_path({{}}), Error);
}

TEST(DurationsFromPath, ConservationOnOptimalPaths) {
  std::mt19937 rng(10);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = uniform_int(rng, 1, 8);
    const std::size_t T = uniform_int(rng, n, 40);
    const auto y = random_labels(rng, n, 6);
    const auto d = durations_from_path(best_monotonic_path({oracle::random_log_softmax(rng, T, 7)}, y));
    ASSERT_EQ(d.size(), n);
    ASSERT_EQ(d.total(), T);
    for (auto f : d.frames) ASSERT_GE(f, 1u);
  }
}
