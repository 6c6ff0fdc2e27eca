#include "radonad/evaluation.hpp"

#include "radonad/error.hpp"
#include "radonad/parallel.hpp"
#include "radonad/rng.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace radonad {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (auto l : labels) n_pos += l ? 1 : 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("ROC-AUC needs both normal and anomalous items");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of average ranks (1-based) of the positives.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]]) rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double pos = static_cast<double>(n_pos);
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * static_cast<double>(n_neg));
}

double roc_auc(const ScoredSet& set) { return roc_auc(set.scores, set.labels); }

std::vector<std::pair<double, double>> roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  std::size_t n_pos = 0;
  for (auto l : labels) n_pos += l ? 1 : 0;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("ROC curve needs both normal and anomalous items");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::pair<double, double>> out{{0.0, 0.0}};
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (labels[order[i]]) ++tp; else ++fp;
    if (i + 1 == order.size() || scores[order[i + 1]] != scores[order[i]]) {
      out.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                       static_cast<double>(tp) / static_cast<double>(n_pos));
    }
  }
  return out;
}

void PipelineConfig::validate() const {
  window.validate();
  radon.validate();
  detector.validate();
  regressor().validate();
  if (threads == 0) throw ConfigError("threads must be >= 1");
}

OneVsRestReport run_one_vs_rest(const LabeledDataset& dataset, const PipelineConfig& pipeline) {
  pipeline.validate();
  const auto splits = one_vs_rest_splits(dataset);
  OneVsRestReport report;
  report.warnings = splits.warnings;
  report.splits.resize(splits.splits.size());

  // Splits run in parallel; each split fits single-threaded.
  const std::size_t outer = std::min(pipeline.threads, splits.splits.size());
  const std::size_t inner = outer > 1 ? 1 : pipeline.threads;
  parallel_for(splits.splits.size(), outer, [&](std::size_t i) {
    const auto& split = splits.splits[i];
    SplitResult& r = report.splits[i];
    r.normal_class = split.normal_class;
    r.n_train = split.train.size();
    r.n_test = split.test.size();
    r.n_anomalous = static_cast<std::size_t>(std::count(split.test_labels.begin(), split.test_labels.end(), 1));
    auto start = Clock::now();
    const auto detector = fit_detector(split.train, pipeline.window, pipeline.radon, pipeline.detector, inner);
    r.fit_seconds = seconds_since(start);
    start = Clock::now();
    const auto scores = score_many(detector, split.test, inner);
    r.score_seconds = seconds_since(start);
    r.auc = roc_auc(scores, split.test_labels);
    r.roc = roc_curve(scores, split.test_labels);
  });

  double sum = 0.0;
  for (const auto& r : report.splits) sum += r.auc;
  report.mean_auc = report.splits.empty() ? 0.0 : sum / static_cast<double>(report.splits.size());
  return report;
}

std::optional<double> SyntheticReport::mean_for(Scenario scenario) const {
  for (const auto& [s, m] : scenario_means) {
    if (s == scenario) return m;
  }
  return std::nullopt;
}

double SyntheticReport::overall_mean() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [s, m] : scenario_means) {
    if (m) {
      sum += *m;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

SyntheticReport run_synthetic_suite(const SyntheticSuiteConfig& cfg) {
  cfg.pipeline.validate();
  if (cfg.trials == 0) throw ConfigError("trials must be >= 1");
  if (cfg.train_series == 0) throw ConfigError("train_series must be >= 1");
  const std::size_t lc = cfg.pipeline.context_length;
  const std::size_t threads = cfg.pipeline.threads;

  bool need_collective = false;
  bool need_regressor = false;
  for (auto s : cfg.scenarios) (is_point_scenario(s) ? need_regressor : need_collective) = true;

  SyntheticReport report;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = mix_seed(cfg.seed ^ (static_cast<std::uint64_t>(trial) << 40));

    SynthConfig clean = cfg.base;
    clean.ratio = 0.0;
    std::vector<TimeSeries> train;
    for (std::size_t i = 0; i < cfg.train_series; ++i) {
      train.push_back(generate_series(clean, mix_seed(trial_seed ^ (0x7A11ULL + i))).series);
    }

    auto start = Clock::now();
    std::optional<FittedDetector> collective;
    std::optional<PointRegressor> regressor;
    if (need_collective) {
      collective = fit_window_detector(train, lc, cfg.pipeline.window, cfg.pipeline.radon, cfg.pipeline.detector,
                                       threads);
    }
    if (need_regressor) {
      regressor = fit_point_regressor(train, cfg.pipeline.window, cfg.pipeline.radon, cfg.pipeline.regressor(),
                                      threads);
    }
    report.fit_seconds += seconds_since(start);

    start = Clock::now();
    for (std::size_t si = 0; si < cfg.scenarios.size(); ++si) {
      for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
        SynthConfig sc = cfg.base;
        sc.scenario = cfg.scenarios[si];
        sc.ratio = cfg.ratios[ri];
        sc.margin = std::max(sc.margin, lc);
        sc.seed = mix_seed(trial_seed ^ (static_cast<std::uint64_t>(si + 1) << 20) ^ static_cast<std::uint64_t>(ri + 1));
        const auto test = generate_series(sc, sc.seed);

        SyntheticCell cell;
        cell.scenario = sc.scenario;
        cell.ratio = sc.ratio;
        cell.trial = trial;

        std::vector<double> scores;
        std::vector<std::uint8_t> labels = test.point_labels;
        if (is_point_scenario(sc.scenario)) {
          scores = score_points(*regressor, test.series, threads);
          if (!cfg.include_prefix) {
            scores.erase(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(lc));
            labels.erase(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(lc));
          }
        } else {
          scores = score_points_collective(*collective, test.series, lc, threads);
        }
        const auto positives = std::count(labels.begin(), labels.end(), 1);
        if (positives > 0 && positives < static_cast<std::ptrdiff_t>(labels.size())) {
          cell.auc = roc_auc(scores, labels);
        }
        report.cells.push_back(cell);
      }
    }
    report.score_seconds += seconds_since(start);
  }

  for (auto s : cfg.scenarios) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& c : report.cells) {
      if (c.scenario == s && c.auc) {
        sum += *c.auc;
        ++count;
      }
    }
    report.scenario_means.emplace_back(s, count > 0 ? std::optional<double>(sum / static_cast<double>(count))
                                                    : std::nullopt);
  }
  return report;
}

}  // namespace radonad
