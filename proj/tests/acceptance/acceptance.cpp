// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero when any of criteria 1-11 fails. Criterion 12 runs only when
// RADONAD_DATASETS names a directory of published .ts datasets.

#include "support.hpp"

#include <radonad/detectors.hpp>
#include <radonad/distances.hpp>
#include <radonad/evaluation.hpp>
#include <radonad/symmetric_eigen.hpp>
#include <radonad/ts_format.hpp>
#include <radonad_cli/commands.hpp>
#include <radonad_cli/run_config.hpp>

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

namespace radonad {
namespace {

struct Outcome {
  enum class Status { pass, fail, skip } status = Status::pass;
  std::string detail;
};

Outcome pass(std::string detail) { return {Outcome::Status::pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Outcome::Status::fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Outcome::Status::skip, std::move(detail)}; }
Outcome verdict(bool ok, std::string detail) { return ok ? pass(std::move(detail)) : fail(std::move(detail)); }

std::string num(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix sample_covariance(const Matrix& rows) {
  const Matrix c = rows.rowwise() - rows.colwise().mean();
  return c.transpose() * c / static_cast<double>(rows.rows() - 1);
}

DirectionSet directions_and_grid(const std::vector<TimeSeries>& train, const WindowConfig& w, std::size_t n_p,
                                 std::size_t n_b, std::uint64_t seed, HistogramGrid& grid) {
  std::vector<PointFeatureMatrix> feats;
  for (const auto& s : train) feats.push_back(extract_point_features(s, w));
  auto dirs = sample_directions(static_cast<std::size_t>(feats[0].cols()), n_p, DirectionScheme::gaussian, seed);
  std::vector<Matrix> proj;
  for (const auto& f : feats) proj.push_back(project(f, dirs));
  grid = fit_grid(proj, n_b, 0.05);
  return dirs;
}

// 1. Every CR row is a valid CDF.
Outcome cdf_validity() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  WindowConfig w;
  std::vector<TimeSeries> train;
  for (int i = 0; i < 5; ++i) train.push_back(testing::random_series(rng, 80, 2));
  HistogramGrid grid;
  const auto dirs = directions_and_grid(train, w, 100, 20, 1, grid);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto len = 10 + rng.below(150);
    const auto s = testing::random_series(rng, len, 2);
    Matrix v = s.values() * rng.uniform(0.1, 5.0);
    const auto cr = cumulative_radon(extract_point_features(TimeSeries(v), w), dirs, grid);
    for (std::size_t p = 0; p < cr.n_projections; ++p) {
      bool ok = std::abs(cr.at(p, cr.n_bins - 1) - 1.0) <= 1e-9 && cr.at(p, 0) >= 0.0;
      for (std::size_t k = 1; k < cr.n_bins; ++k) ok = ok && cr.at(p, k) >= cr.at(p, k - 1);
      if (!ok) ++bad;
    }
  }
  const double secs = seconds_since(t0);
  return verdict(bad == 0 && secs < 10.0, "invalid rows=" + std::to_string(bad) + " seconds=" + num(secs, 3));
}

// 2. Shuffling point-feature rows leaves CR features bit-identical.
Outcome permutation_invariance() {
  Rng rng(202);
  std::size_t mismatches = 0;
  for (int c = 0; c < 100; ++c) {
    WindowConfig w;
    w.half_window = 1 + rng.below(4);
    const auto channels = 1 + rng.below(3);
    std::vector<TimeSeries> train{testing::random_series(rng, 60, channels)};
    HistogramGrid grid;
    const auto dirs = directions_and_grid(train, w, 5 + rng.below(40), 2 + rng.below(30), c, grid);
    const auto feats = extract_point_features(testing::random_series(rng, 20 + rng.below(80), channels), w);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(feats.rows()));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    PointFeatureMatrix shuffled(feats.rows(), feats.cols());
    for (std::size_t i = 0; i < order.size(); ++i) shuffled.row(static_cast<Eigen::Index>(i)) = feats.row(order[i]);
    if (cumulative_radon(feats, dirs, grid).values != cumulative_radon(shuffled, dirs, grid).values) ++mismatches;
  }
  return verdict(mismatches == 0, "mismatching cases=" + std::to_string(mismatches) + "/100");
}

// 3. Whitening identity and the Mahalanobis equivalence.
Outcome whitening_identity() {
  Rng rng(303);
  // Full-rank rows with the shape of a 10-direction, 4-bin feature bank.
  const Matrix rows = testing::random_matrix(rng, 200, 40) * testing::random_matrix(rng, 40, 40) +
                      Vector::Ones(200) * testing::random_vector(rng, 40, 5.0).transpose();
  const auto model = fit_sphering(rows);
  const double cov_err = (sample_covariance(model.sphere_rows(rows)) - Matrix::Identity(40, 40)).cwiseAbs().maxCoeff();

  const Eigen::LDLT<Matrix> solver(sample_covariance(rows) + model.epsilon() * Matrix::Identity(40, 40));
  double maha_err = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const Vector a = rows.row(static_cast<Eigen::Index>(rng.below(200))).transpose() + testing::random_vector(rng, 40);
    const Vector b = testing::random_vector(rng, 40, 3.0);
    const Vector diff = a - b;
    const double oracle = std::sqrt(diff.dot(solver.solve(diff)));
    maha_err = std::max(maha_err, std::abs((model.sphere(a) - model.sphere(b)).norm() - oracle) / std::max(1.0, oracle));
  }

  // Through a fitted detector on 200 series. A CR bank always has a constant
  // last bin per direction, so its covariance is singular; the sphered bank must
  // then carry U diag(l / (l + eps)) U^T, which is I on the informative span.
  std::vector<TimeSeries> train;
  for (int i = 0; i < 200; ++i) train.push_back(testing::random_series(rng, 40 + rng.below(40), 2));
  RadonConfig radon;
  radon.n_projections = 10;
  radon.n_bins = 4;
  WindowConfig w;
  w.half_window = 2;
  const auto det = fit_detector(train, w, radon, DetectorConfig{});
  const Eigen::SelfAdjointEigenSolver<Matrix> ref(sample_covariance(det.bank));
  const Vector shrink = ref.eigenvalues().cwiseMax(0.0).array() / (ref.eigenvalues().cwiseMax(0.0).array() + det.sphering->epsilon());
  const Matrix expected = ref.eigenvectors() * shrink.asDiagonal() * ref.eigenvectors().transpose();
  const double bank_err = (sample_covariance(det.space_bank()) - expected).cwiseAbs().maxCoeff();
  const auto informative = static_cast<std::size_t>((shrink.array() > 0.5).count());

  const bool ok = cov_err <= 1e-3 && maha_err <= 1e-9 && bank_err <= 1e-3;
  return verdict(ok, "cov_max_err=" + num(cov_err, 3) + " mahalanobis_max_rel_err=" + num(maha_err, 3) +
                         " cr_bank_informative_dims=" + std::to_string(informative) + " cr_bank_err=" + num(bank_err, 3));
}

double exact_wasserstein_pow(std::vector<double> a, std::vector<double> b, int p) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 1; i < a.size(); ++i) cuts.push_back(double(i) / double(a.size()));
  for (std::size_t i = 1; i < b.size(); ++i) cuts.push_back(double(i) / double(b.size()));
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const double qa = a[std::min(a.size() - 1, static_cast<std::size_t>(mid * double(a.size())))];
    const double qb = b[std::min(b.size() - 1, static_cast<std::size_t>(mid * double(b.size())))];
    total += (cuts[i + 1] - cuts[i]) * std::pow(std::abs(qa - qb), p);
  }
  return total;
}

// 4. Sliced Wasserstein against sorted-sample 1D transport.
Outcome swd_oracles() {
  Rng rng(404);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs(1 + rng.below(16)), ys(1 + rng.below(16));
    for (auto& x : xs) x = rng.normal();
    const double shift = rng.uniform(-2, 2);
    for (auto& y : ys) y = rng.normal() * rng.uniform(0.5, 2) + shift;
    std::vector<Matrix> proj(2);
    proj[0] = Eigen::Map<const Matrix>(xs.data(), 1, static_cast<Eigen::Index>(xs.size()));
    proj[1] = Eigen::Map<const Matrix>(ys.data(), 1, static_cast<Eigen::Index>(ys.size()));
    const auto grid = fit_grid(proj, 5 + rng.below(60), 0.05);
    const auto a = cumulative_radon_from_projections(proj[0], grid);
    const auto b = cumulative_radon_from_projections(proj[1], grid);
    const double width = grid.bin_width(0);
    const double e1 = std::abs(dist_swd1(a, b, grid) - exact_wasserstein_pow(xs, ys, 1)) / width;
    const double e2 = std::abs(dist_swd2(a, b, grid) - std::sqrt(exact_wasserstein_pow(xs, ys, 2))) / width;
    worst = std::max({worst, e1, e2});
    if (e1 > 2.0 || e2 > 2.0) ++bad;
  }
  return verdict(bad == 0, "cases outside 2 bin widths=" + std::to_string(bad) + "/200 worst_in_widths=" + num(worst, 3));
}

// 5. Rank-based AUC against pair counting.
Outcome auc_oracle() {
  Rng rng(505);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ScoredSet set;
    const std::size_t n = 2 + rng.below(200);
    const std::uint64_t levels = trial % 2 == 0 ? 3 : 1000000;
    for (std::size_t i = 0; i < n; ++i) {
      set.labels.push_back(static_cast<std::uint8_t>(i < 2 ? i : rng.below(2)));
      set.scores.push_back(static_cast<double>(rng.below(levels)));
    }
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!set.labels[i] || set.labels[j]) continue;
        pairs += 1.0;
        wins += set.scores[i] > set.scores[j] ? 1.0 : (set.scores[i] == set.scores[j] ? 0.5 : 0.0);
      }
    }
    worst = std::max(worst, std::abs(roc_auc(set) - wins / pairs));
  }
  return verdict(worst <= 1e-12, "max_abs_err=" + num(worst, 3));
}

// 6. kNN scores are non-decreasing in k; a bank member scores 0 at k=1.
Outcome knn_monotonicity() {
  Rng rng(606);
  std::size_t violations = 0, nonzero = 0;
  for (int c = 0; c < 100; ++c) {
    const auto n = 3 + rng.below(12);
    std::vector<TimeSeries> train;
    for (std::size_t i = 0; i < n; ++i) train.push_back(testing::random_series(rng, 30 + rng.below(30)));
    RadonConfig radon;
    radon.n_projections = 4 + rng.below(20);
    radon.n_bins = 3 + rng.below(10);
    radon.seed = static_cast<std::uint64_t>(c);
    DetectorConfig dc;
    dc.scorer = Scorer::knn;
    dc.k = 1;
    const std::array kinds{DistanceKind::l1, DistanceKind::l2, DistanceKind::swd1, DistanceKind::swd2};
    dc.distance = kinds[static_cast<std::size_t>(c) % 4];
    dc.space = (dc.distance == DistanceKind::swd1 || dc.distance == DistanceKind::swd2 || c % 8 == 1)
                   ? FeatureSpace::raw
                   : FeatureSpace::sphered;
    WindowConfig w;
    w.half_window = 2;
    const auto det = fit_detector(train, w, radon, dc);
    const auto q = det.cr_features(testing::random_series(rng, 40));
    double prev = -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double s = det.knn_score(q, k);
      if (s < prev) ++violations;
      prev = s;
    }
    const auto member = det.cr_features(train[rng.below(n)]);
    const double zero = det.knn_score(member, 1);
    if (dc.distance == DistanceKind::swd2 ? zero > 1e-9 : zero != 0.0) ++nonzero;
  }
  return verdict(violations == 0 && nonzero == 0,
                 "monotonicity violations=" + std::to_string(violations) + " nonzero self scores=" + std::to_string(nonzero));
}

double determinant(const Matrix& m) {
  const auto n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    det += (j % 2 == 0 ? 1.0 : -1.0) * m(0, j) * determinant(minor);
  }
  return det;
}

// Roots of det(A - x I) found by scanning the Gershgorin interval and bisecting.
std::vector<double> brute_force_eigenvalues(const Matrix& a) {
  const auto n = a.rows();
  double lo = 0.0, hi = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
    lo = std::min(lo, a(i, i) - r);
    hi = std::max(hi, a(i, i) + r);
  }
  lo -= 1.0;
  hi += 1.0;
  auto f = [&](double x) { return determinant(a - x * Matrix::Identity(n, n)); };
  std::vector<double> roots;
  const int steps = 20000;
  double x0 = lo, f0 = f(lo);
  for (int s = 1; s <= steps; ++s) {
    const double x1 = lo + (hi - lo) * s / steps;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
      double l = x0, h = x1, fl = f0;
      for (int it = 0; it < 200 && h - l > 0; ++it) {
        const double m = 0.5 * (l + h);
        if (m == l || m == h) break;
        const double fm = f(m);
        if ((fm < 0) == (fl < 0)) {
          l = m;
          fl = fm;
        } else {
          h = m;
        }
      }
      roots.push_back(0.5 * (l + h));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

// 7. Eigensolver against brute force, plus the regularized whitening identity.
Outcome eigensolver() {
  Rng rng(707);
  double worst = 0.0;
  std::size_t missing = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Matrix m = testing::random_matrix(rng, n, n);
    const Matrix a = 0.5 * (m + m.transpose());
    const auto eig = symmetric_eigen(a);
    const auto roots = brute_force_eigenvalues(a);
    if (roots.size() != static_cast<std::size_t>(n)) {
      ++missing;
      continue;
    }
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(eig.values[i] - roots[static_cast<std::size_t>(i)]));
  }

  const Matrix rows = testing::random_matrix(rng, 60, 200) * testing::random_matrix(rng, 200, 200, 0.1);
  const auto model = fit_sphering(rows);
  const Matrix w = model.whitener();
  const Matrix id = w * (sample_covariance(rows) + model.epsilon() * Matrix::Identity(200, 200)) * w;
  const double whiten_err = (id - Matrix::Identity(200, 200)).norm();
  const bool ok = worst <= 1e-9 && missing == 0 && whiten_err <= 1e-6 * 200;
  return verdict(ok, "max_eigenvalue_err=" + num(worst, 3) + " unresolved=" + std::to_string(missing) +
                         " whitening_frobenius_err=" + num(whiten_err, 3));
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// 8. Same seed gives the same bytes, for any thread count.
Outcome determinism() {
  testing::TempDir dir("acceptance_det");
  std::vector<std::string> problems;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  check(run_cli({"synth", "--scenario", "shapelet", "--ratio", "0", "--count", "3", "--out-dir", dir.file("train"),
                 "--seed", "7"})
                .code == 0,
        "synth train");
  check(run_cli({"synth", "--scenario", "shapelet", "--count", "3", "--out-dir", dir.file("test")}).code == 0,
        "synth test");
  for (const std::string unit : {"series", "window", "regressor"}) {
    for (const std::string threads : {"1", "8"}) {
      check(run_cli({"fit", "--train", dir.file("train"), "--model", dir.file(unit + threads + ".json"), "--unit", unit,
                     "--seed", "3", "--threads", threads})
                    .code == 0,
            "fit " + unit);
    }
    check(run_cli({"fit", "--train", dir.file("train"), "--model", dir.file(unit + "again.json"), "--unit", unit,
                   "--seed", "3"})
                  .code == 0,
          "refit " + unit);
    const auto base = read_text_file(dir.file(unit + "1.json"));
    check(base == read_text_file(dir.file(unit + "8.json")), unit + " model threads 1 vs 8");
    check(base == read_text_file(dir.file(unit + "again.json")), unit + " model refit");
    std::vector<std::string> score{"score", "--model", dir.file(unit + "1.json"), "--data", dir.file("test")};
    if (unit != "series") score.push_back("--points");
    auto s1 = score, s8 = score;
    s1.insert(s1.end(), {"--threads", "1"});
    s8.insert(s8.end(), {"--threads", "8"});
    const auto r1 = run_cli(s1), r8 = run_cli(s8);
    check(r1.code == 0 && r1.out == r8.out, unit + " scores threads 1 vs 8");
  }
  const std::vector<std::string> eval{"eval", "--protocol", "synthetic", "--projections", "30", "--seed", "5"};
  auto e1 = eval, e8 = eval;
  e1.insert(e1.end(), {"--threads", "1"});
  e8.insert(e8.end(), {"--threads", "8"});
  const auto a = run_cli(e1), b = run_cli(e1), c = run_cli(e8);
  check(a.code == 0 && a.out == b.out, "synthetic report rerun");
  check(a.out == c.out, "synthetic report threads 1 vs 8");

  std::string detail = problems.empty() ? "models, scores and reports identical" : "differs:";
  for (const auto& p : problems) detail += " [" + p + "]";
  return verdict(problems.empty(), detail);
}

// 9. Synthetic suite with defaults.
Outcome synthetic_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = run_synthetic_suite(SyntheticSuiteConfig{});
  const double secs = seconds_since(t0);
  const double shapelet = report.mean_for(Scenario::shapelet).value_or(0.0);
  const double trend = report.mean_for(Scenario::trend).value_or(0.0);
  const double global = report.mean_for(Scenario::point_global).value_or(0.0);
  std::string detail;
  for (const auto& [sc, m] : report.scenario_means) detail += to_string(sc) + "=" + num(m.value_or(-1)) + " ";
  detail += "seconds=" + num(secs, 3);
  return verdict(shapelet >= 0.65 && trend >= 0.65 && global >= 0.85 && secs < 120.0, detail);
}

double suite_mean(std::size_t n_p, std::size_t n_b) {
  SyntheticSuiteConfig cfg;
  cfg.trials = 5;
  cfg.pipeline.radon.n_projections = n_p;
  cfg.pipeline.radon.n_bins = n_b;
  cfg.pipeline.threads = 4;
  return run_synthetic_suite(cfg).overall_mean();
}

// 10. More projections and more bins do not hurt.
Outcome ablation_trends() {
  const double p100 = suite_mean(100, 20), p5 = suite_mean(5, 20), b2 = suite_mean(100, 2);
  const bool ok = p100 >= p5 - 0.02 && p100 >= b2;
  return verdict(ok, "N_P=100,N_B=20: " + num(p100) + " N_P=5: " + num(p5) + " N_B=2: " + num(b2));
}

// Three classes that differ only in the phase lag of one channel, under
// per-series gain and offset nuisance shared across channels.
LabeledDataset correlated_channels(std::uint64_t seed, int per_class) {
  Rng rng(seed);
  LabeledDataset ds;
  const double lags[3] = {0.0, 0.7, 1.4};
  for (int split = 0; split < 2; ++split) {
    for (int c = 0; c < 3; ++c) {
      for (int i = 0; i < per_class; ++i) {
        const int len = 64;
        Matrix m(len, 3);
        const double gain = std::exp(rng.uniform(-0.7, 0.7));
        const double offset = 0.8 * rng.normal();
        const double phase = rng.uniform(0, 2 * M_PI);
        for (int t = 0; t < len; ++t) {
          const double a = 2 * M_PI * t / 16.0 + phase;
          m(t, 0) = gain * std::sin(a) + offset + 0.05 * rng.normal();
          m(t, 1) = gain * std::sin(a + lags[c]) + offset + 0.05 * rng.normal();
          m(t, 2) = 0.5 * gain * std::cos(a) + offset + 0.05 * rng.normal();
        }
        ds.add(TimeSeries(m), "c" + std::to_string(c), split ? Split::test : Split::train);
      }
    }
  }
  return ds;
}

// 11. Sphering beats raw features on correlated channels.
Outcome sphering_gap() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = correlated_channels(seed, 30);
    PipelineConfig p;
    p.radon.seed = seed;
    p.threads = 4;
    p.detector.space = FeatureSpace::raw;
    const double raw = run_one_vs_rest(ds, p).mean_auc;
    p.detector.space = FeatureSpace::sphered;
    const double sph = run_one_vs_rest(ds, p).mean_auc;
    ok = ok && sph - raw >= 0.05;
    detail += "seed" + std::to_string(seed) + " raw=" + num(raw) + " sphered=" + num(sph) + " ";
  }
  detail.pop_back();
  return verdict(ok, detail);
}

// 12. Published datasets, when supplied.
Outcome published_datasets() {
  const char* root = std::getenv("RADONAD_DATASETS");
  if (root == nullptr || !std::filesystem::is_directory(root)) return skip("set RADONAD_DATASETS to a dataset directory");
  const std::map<std::string, double> targets{{"Epilepsy", 0.981},
                                              {"NATOPS", 0.961},
                                              {"SpokenArabicDigits", 0.978},
                                              {"CharacterTrajectories", 0.997},
                                              {"RacketSports", 0.923}};
  cli::RunConfig cfg;
  cfg.threads = 8;
  std::string detail = "config_hash=" + cfg.hash();
  bool ok = true, any = false;
  for (const auto& [name, target] : targets) {
    const auto dir = std::filesystem::path(root) / name;
    if (!std::filesystem::is_directory(dir)) continue;
    any = true;
    const auto report = run_one_vs_rest(load_ts_dataset(dir), cfg.pipeline());
    ok = ok && std::abs(report.mean_auc - target) <= 0.02;
    detail += " " + name + "=" + num(report.mean_auc) + " (target " + num(target) + ")";
  }
  if (!any) return skip("no known dataset directories under " + std::string(root));
  return verdict(ok, detail);
}

}  // namespace
}  // namespace radonad

int main() {
  using radonad::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cdf_validity", radonad::cdf_validity},
      {"permutation_invariance", radonad::permutation_invariance},
      {"whitening_identity", radonad::whitening_identity},
      {"swd_oracles", radonad::swd_oracles},
      {"auc_oracle", radonad::auc_oracle},
      {"knn_monotonicity", radonad::knn_monotonicity},
      {"eigensolver", radonad::eigensolver},
      {"determinism", radonad::determinism},
      {"synthetic_suite", radonad::synthetic_suite},
      {"ablation_trends", radonad::ablation_trends},
      {"sphering_gap", radonad::sphering_gap},
      {"published_datasets", radonad::published_datasets},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = radonad::fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Outcome::Status::pass ? "PASS" : o.status == Outcome::Status::fail ? "FAIL" : "SKIP";
    std::cout << tag << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << std::endl;
    if (o.status == Outcome::Status::fail && i + 1 < criteria.size()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
