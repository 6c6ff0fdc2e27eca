#include "support.hpp"

#include <radonad/detectors.hpp>
#include <radonad/error.hpp>

#include <gtest/gtest.h>

#include <algorithm>

namespace radonad {
namespace {

RadonConfig radon(std::size_t n_p, std::size_t n_b, std::uint64_t seed = 0) {
  RadonConfig r;
  r.n_projections = n_p;
  r.n_bins = n_b;
  r.seed = seed;
  return r;
}

DetectorConfig config(Scorer scorer, FeatureSpace space, DistanceKind kind = DistanceKind::l2, std::size_t k = 2) {
  DetectorConfig c;
  c.scorer = scorer;
  c.space = space;
  c.distance = kind;
  c.k = k;
  return c;
}

WindowConfig small_window() {
  WindowConfig w;
  w.half_window = 2;
  return w;
}

std::vector<TimeSeries> noisy_sines(Rng& rng, std::size_t n, std::size_t length, double noise = 0.1) {
  std::vector<TimeSeries> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = rng.uniform(0, 6.283);
    Matrix v(static_cast<Eigen::Index>(length), 1);
    for (std::size_t t = 0; t < length; ++t) {
      v(static_cast<Eigen::Index>(t), 0) = std::sin(t * 0.3 + phase) + noise * rng.normal();
    }
    out.emplace_back(v);
  }
  return out;
}

TEST(Detector, IdenticalTrainingSeriesStillFit) {
  Rng rng(1);
  const auto one = testing::random_series(rng, 40);
  const std::vector<TimeSeries> train(5, one);
  const auto det = fit_detector(train, small_window(), radon(10, 8), config(Scorer::mean_dist, FeatureSpace::sphered));
  ASSERT_EQ(det.bank_size(), 5u);
  for (Eigen::Index i = 1; i < 5; ++i) EXPECT_TRUE(det.bank.row(i) == det.bank.row(0));
  ASSERT_TRUE(det.sphering.has_value());
  EXPECT_EQ(det.sphering->rank(), 0u);
  EXPECT_EQ(score_series(det, one), 0.0);
  EXPECT_GT(score_series(det, testing::random_series(rng, 40)), 0.0);
}

TEST(Detector, KnnScoreOfTrainingMemberIsZero) {
  Rng rng(2);
  const auto train = noisy_sines(rng, 8, 60);
  for (auto space : {FeatureSpace::raw, FeatureSpace::sphered}) {
    for (auto kind : {DistanceKind::l1, DistanceKind::l2}) {
      const auto det = fit_detector(train, small_window(), radon(30, 10), config(Scorer::knn, space, kind, 1));
      for (const auto& s : train) EXPECT_EQ(score_series(det, s), 0.0);
    }
  }
  const auto det = fit_detector(train, small_window(), radon(30, 10), config(Scorer::knn, FeatureSpace::raw, DistanceKind::swd2, 1));
  for (const auto& s : train) EXPECT_LE(score_series(det, s), 1e-9);
}

TEST(Detector, KnnScoreIsNonDecreasingInK) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(10);
    std::vector<TimeSeries> train;
    for (std::size_t i = 0; i < n; ++i) train.push_back(testing::random_series(rng, 20 + rng.below(20)));
    const auto kind = static_cast<DistanceKind>(rng.below(4));
    const auto space = (kind == DistanceKind::swd1 || kind == DistanceKind::swd2) ? FeatureSpace::raw
                                                                                  : static_cast<FeatureSpace>(rng.below(2));
    const auto det = fit_detector(train, small_window(), radon(6, 5, trial), config(Scorer::knn, space, kind, 1));
    const auto query = det.cr_features(testing::random_series(rng, 30));
    double prev = -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double s = det.knn_score(query, k);
      EXPECT_GE(s, prev) << "k=" << k;
      prev = s;
    }
    EXPECT_THROW(det.knn_score(query, n + 1), ConfigError);
  }
}

TEST(Detector, SpheredMeanDistanceIsMahalanobis) {
  Rng rng(4);
  const auto train = noisy_sines(rng, 12, 80);
  const auto det = fit_detector(train, small_window(), radon(20, 10), config(Scorer::mean_dist, FeatureSpace::sphered));
  const Matrix c = det.bank.rowwise() - det.bank.colwise().mean();
  const Matrix sigma = c.transpose() * c / static_cast<double>(det.bank.rows() - 1);
  const Eigen::Index d = sigma.rows();
  const Eigen::LDLT<Matrix> solver(sigma + det.sphering->epsilon() * Matrix::Identity(d, d));
  const Vector mu = det.bank.colwise().mean().transpose();
  for (const auto& s : noisy_sines(rng, 10, 80, 0.3)) {
    const Vector diff = det.cr_features(s) - mu;
    const double oracle = std::sqrt(diff.dot(solver.solve(diff)));
    EXPECT_NEAR(score_series(det, s), oracle, 1e-7 * oracle);
  }
}

TEST(Detector, SquaredL2OptionSquaresScores) {
  Rng rng(5);
  const auto train = noisy_sines(rng, 6, 50);
  auto cfg = config(Scorer::mean_dist, FeatureSpace::raw);
  const auto plain = fit_detector(train, small_window(), radon(10, 6), cfg);
  cfg.squared_l2 = true;
  const auto squared = fit_detector(train, small_window(), radon(10, 6), cfg);
  const auto q = testing::random_series(rng, 50);
  const double s = score_series(plain, q);
  EXPECT_NEAR(score_series(squared, q), s * s, 1e-12 * s * s);
}

TEST(Detector, RawScoresScaleWithFeatures) {
  Rng rng(6);
  const auto train = noisy_sines(rng, 7, 50);
  const auto query = testing::random_series(rng, 50);
  for (auto kind : {DistanceKind::l1, DistanceKind::l2}) {
    for (auto scorer : {Scorer::mean_dist, Scorer::knn}) {
      auto det = fit_detector(train, small_window(), radon(12, 6), config(scorer, FeatureSpace::raw, kind, 3));
      const Vector cr = det.cr_features(query);
      const double base = det.score_features(cr);
      for (double c : {0.5, 2.0, 4.0}) {
        FittedDetector scaled = det;
        scaled.bank *= c;
        scaled.finalize();
        EXPECT_EQ(scaled.score_features(c * cr), c * base);
        if (kind == DistanceKind::l2) {
          FittedDetector sq = det;
          sq.config.squared_l2 = true;
          sq.finalize();
          const double sq_base = sq.score_features(cr);
          sq.bank *= c;
          sq.finalize();
          EXPECT_EQ(sq.score_features(c * cr), c * c * sq_base);
        }
      }
    }
  }
}

TEST(Detector, SpheredScoresAreScaleInvariantWhenFullRank) {
  Rng rng(7);
  const Matrix bank = testing::random_matrix(rng, 60, 12) * testing::random_matrix(rng, 12, 12);
  EpsilonPolicy exact;
  exact.mode = EpsilonPolicy::Mode::absolute;
  exact.value = 0.0;
  FittedDetector det;
  det.config = config(Scorer::mean_dist, FeatureSpace::sphered);
  det.bank = bank;
  det.sphering = fit_sphering(bank, exact);
  det.finalize();
  const Vector q = testing::random_vector(rng, 12, 2.0);
  const double base = det.score_features(q);
  for (double c : {0.01, 3.0, 250.0}) {
    FittedDetector scaled = det;
    scaled.bank = c * bank;
    scaled.sphering = fit_sphering(scaled.bank, exact);
    scaled.finalize();
    EXPECT_NEAR(scaled.score_features(c * q), base, 1e-6 * base);
  }
}

TEST(Detector, BankPermutationKeepsScoreOrdering) {
  Rng rng(8);
  const auto train = noisy_sines(rng, 9, 50);
  auto reversed = train;
  std::reverse(reversed.begin(), reversed.end());
  for (auto scorer : {Scorer::mean_dist, Scorer::knn}) {
    const auto a = fit_detector(train, small_window(), radon(15, 8), config(scorer, FeatureSpace::sphered));
    const auto b = fit_detector(reversed, small_window(), radon(15, 8), config(scorer, FeatureSpace::sphered));
    const auto queries = noisy_sines(rng, 12, 50, 0.4);
    const auto sa = score_many(a, queries);
    const auto sb = score_many(b, queries);
    for (std::size_t i = 0; i < sa.size(); ++i) {
      EXPECT_NEAR(sa[i], sb[i], 1e-6 * sa[i]);
      for (std::size_t j = 0; j < sa.size(); ++j) {
        if (std::abs(sa[i] - sa[j]) > 1e-5 * sa[i]) EXPECT_EQ(sa[i] < sa[j], sb[i] < sb[j]);
      }
    }
  }
}

TEST(Detector, FitIsDeterministicAcrossThreadCounts) {
  Rng rng(9);
  const auto train = noisy_sines(rng, 10, 70);
  const auto a = fit_detector(train, small_window(), radon(25, 10, 3), config(Scorer::mean_dist, FeatureSpace::sphered), 1);
  const auto b = fit_detector(train, small_window(), radon(25, 10, 3), config(Scorer::mean_dist, FeatureSpace::sphered), 4);
  EXPECT_TRUE(a.bank == b.bank);
  EXPECT_TRUE(a.directions.directions == b.directions.directions);
  EXPECT_TRUE(a.space_bank() == b.space_bank());
  const auto q = noisy_sines(rng, 7, 70);
  EXPECT_EQ(score_many(a, q, 1), score_many(b, q, 3));
}

TEST(Detector, AutoResolutionsAreFixedAtFit) {
  Rng rng(10);
  std::vector<TimeSeries> train{testing::random_series(rng, 64), testing::random_series(rng, 100)};
  WindowConfig w;
  w.resolutions.reset();
  const auto det = fit_detector(train, w, radon(5, 4), config(Scorer::mean_dist, FeatureSpace::raw));
  ASSERT_TRUE(det.window.resolutions.has_value());
  EXPECT_EQ(*det.window.resolutions, 3u);
  EXPECT_EQ(det.directions.dim(), 27u);
  EXPECT_NO_THROW(score_series(det, testing::random_series(rng, 500)));
}

TEST(Detector, ValidatesInputs) {
  Rng rng(11);
  const std::vector<TimeSeries> one{testing::random_series(rng, 30)};
  EXPECT_THROW(fit_detector(one, small_window(), radon(5, 4), config(Scorer::mean_dist, FeatureSpace::raw)),
               std::invalid_argument);
  const std::vector<TimeSeries> two{testing::random_series(rng, 30), testing::random_series(rng, 30)};
  EXPECT_THROW(fit_detector(two, small_window(), radon(5, 4), config(Scorer::knn, FeatureSpace::raw, DistanceKind::l2, 3)),
               ConfigError);
  EXPECT_THROW(fit_detector(two, small_window(), radon(5, 4), config(Scorer::mean_dist, FeatureSpace::sphered, DistanceKind::swd1)),
               ConfigError);
  const auto det = fit_detector(two, small_window(), radon(5, 4), config(Scorer::mean_dist, FeatureSpace::raw));
  EXPECT_THROW(score_series(det, testing::random_series(rng, 30, 2)), std::invalid_argument);
}

TEST(Detector, SwdScorersRunOnRawFeatures) {
  Rng rng(12);
  const auto train = noisy_sines(rng, 6, 60);
  const auto shifted = [&] {
    auto s = noisy_sines(rng, 1, 60).front();
    return TimeSeries(s.values().array() + 3.0);
  }();
  for (auto kind : {DistanceKind::swd1, DistanceKind::swd2}) {
    for (auto scorer : {Scorer::mean_dist, Scorer::knn}) {
      const auto det = fit_detector(train, small_window(), radon(20, 10), config(scorer, FeatureSpace::raw, kind));
      const double normal = score_series(det, noisy_sines(rng, 1, 60).front());
      EXPECT_GT(score_series(det, shifted), normal);
    }
  }
}

TEST(CollectiveScoring, FlatOnStationarySignal) {
  const auto train = std::vector<TimeSeries>{testing::sine_series(200, 25), testing::sine_series(200, 25, 1.0)};
  const auto det = fit_window_detector(train, 20, WindowConfig{}, RadonConfig{}, DetectorConfig{});
  const auto scores = score_points_collective(det, testing::sine_series(200, 25, 0.37), 20);
  ASSERT_EQ(scores.size(), 200u);
  auto sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  EXPECT_LT(sorted.back() / median, 3.0);
}

TEST(CollectiveScoring, TrendSegmentScoresHigher) {
  Rng rng(13);
  auto noisy = [&](double phase, bool trend) {
    std::vector<double> v(200);
    for (int t = 0; t < 200; ++t) {
      v[t] = std::sin(2 * M_PI * t / 25.0 + phase) + 0.05 * rng.normal();
      if (trend && t >= 80 && t < 120) v[t] += 0.05 * (t - 79);
    }
    return TimeSeries::univariate(v);
  };
  const std::vector<TimeSeries> train{noisy(0.0, false), noisy(1.3, false)};
  const auto det = fit_window_detector(train, 20, WindowConfig{}, RadonConfig{}, DetectorConfig{});
  const auto scores = score_points_collective(det, noisy(2.1, true), 20);
  double inside = 0, outside = 0;
  for (int t = 0; t < 200; ++t) (t >= 80 && t < 120 ? inside : outside) += scores[t];
  EXPECT_GT(inside / 40.0, outside / 160.0);
}

TEST(CollectiveScoring, WindowsAreCenteredAndShiftedInward) {
  Rng rng(14);
  const auto train = noisy_sines(rng, 3, 40);
  const auto det = fit_window_detector(train, 10, small_window(), radon(8, 6), config(Scorer::mean_dist, FeatureSpace::raw));
  const auto s = noisy_sines(rng, 1, 30).front();
  const auto scores = score_points_collective(det, s, 10);
  for (std::size_t t = 0; t < 30; ++t) {
    const std::size_t begin = std::min<std::size_t>(t >= 5 ? t - 5 : 0, 20);
    EXPECT_EQ(scores[t], score_series(det, s.slice(begin, 10))) << "t=" << t;
  }
  EXPECT_THROW(score_points_collective(det, s.slice(0, 9), 10), std::invalid_argument);
}

}  // namespace
}  // namespace radonad
