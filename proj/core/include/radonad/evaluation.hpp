#pragma once

#include "radonad/detectors.hpp"
#include "radonad/synth.hpp"
#include "radonad/ts_format.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace radonad {

/// Scores with binary labels (1 = anomalous).
struct ScoredSet {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

/// Mann-Whitney ROC-AUC with average ranks; tied pairs count 1/2.
/// Throws std::invalid_argument unless both labels are present.
double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels);
double roc_auc(const ScoredSet& set);

/// (false positive rate, true positive rate) at every distinct threshold, from (0,0) to (1,1).
std::vector<std::pair<double, double>> roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Everything needed to fit and score one configuration.
struct PipelineConfig {
  WindowConfig window;
  RadonConfig radon;
  DetectorConfig detector;
  /// Window length for collective point scoring and the point regressor.
  std::size_t context_length = 20;
  std::optional<double> ridge_lambda;
  std::size_t threads = 1;

  RegressorConfig regressor() const { return RegressorConfig{context_length, ridge_lambda}; }
  void validate() const;
};

struct SplitResult {
  std::string normal_class;
  double auc = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_anomalous = 0;
  double fit_seconds = 0.0;
  double score_seconds = 0.0;
  std::vector<std::pair<double, double>> roc;
};

struct OneVsRestReport {
  std::vector<SplitResult> splits;
  std::vector<std::string> warnings;
  double mean_auc = 0.0;
};

/// Fits one detector per normal class and scores the full test split against it.
OneVsRestReport run_one_vs_rest(const LabeledDataset& dataset, const PipelineConfig& pipeline);

struct SyntheticSuiteConfig {
  /// Base signal and segment settings; scenario, ratio and seed are set per cell.
  SynthConfig base;
  std::vector<Scenario> scenarios = all_scenarios();
  std::vector<double> ratios{0.05, 0.10, 0.15, 0.20};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Clean series generated per trial for training.
  std::size_t train_series = 2;
  PipelineConfig pipeline;
  /// Count the unscored prefix of the point regressor in point-level AUC.
  bool include_prefix = false;
};

struct SyntheticCell {
  Scenario scenario = Scenario::shapelet;
  double ratio = 0.0;
  std::size_t trial = 0;
  /// Empty when the AUC is undefined (no anomalous or no normal points).
  std::optional<double> auc;
};

struct SyntheticReport {
  std::vector<SyntheticCell> cells;
  /// Per scenario (in config order): mean AUC over ratios and trials, empty if every cell was skipped.
  std::vector<std::pair<Scenario, std::optional<double>>> scenario_means;
  double fit_seconds = 0.0;
  double score_seconds = 0.0;

  std::optional<double> mean_for(Scenario scenario) const;
  /// Mean over all scenarios with a defined mean.
  double overall_mean() const;
};

/// Collective scenarios use a window detector with distance-to-mean scoring;
/// point scenarios use the point regressor. Training data is clean series from
/// the same generator; each cell scores one freshly generated test series.
SyntheticReport run_synthetic_suite(const SyntheticSuiteConfig& cfg);

}  // namespace radonad
