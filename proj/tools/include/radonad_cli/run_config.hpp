#pragma once

#include <radonad/evaluation.hpp>
#include <radonad/model_io.hpp>

#include <map>
#include <string>
#include <vector>

namespace radonad::cli {

/// Every pipeline parameter under a flat key space. Loaded from a JSON object,
/// then overridden by `--key=value` flags.
struct RunConfig {
  std::size_t window = 4;
  std::string resolutions = "1";  // integer or "auto"
  std::string boundary = "clamp";
  bool znormalize = false;
  std::size_t projections = 100;
  std::size_t bins = 20;
  std::string scheme = "gaussian";
  std::uint64_t seed = 0;
  double pad = 0.05;
  double epsilon = 1e-6;
  std::string epsilon_mode = "relative";
  std::string scorer = "mean_dist";
  std::string distance = "L2";
  std::size_t k = 2;
  std::string space = "sphered";
  bool squared_l2 = false;
  std::size_t context_length = 20;
  std::string ridge_lambda = "auto";  // number or "auto"
  std::string unit = "series";
  std::size_t threads = 1;
  std::size_t channels = 0;  // 0 = infer from CSV
  std::size_t min_length = 0;
  std::size_t max_length = 0;  // 0 = no upper bound
  bool include_prefix = false;
  std::size_t trials = 1;
  std::size_t train_series = 2;
  std::size_t length = 200;
  double amplitude = 1.0;
  double period = 25.0;
  double noise = 0.05;
  std::size_t segment_length = 20;

  /// Sets one key from its textual value; throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Applies a flat JSON object (as text).
  void merge_json(const std::string& json_text);

  static const std::vector<std::string>& keys();

  /// Canonical JSON of every key except `threads` (which never changes results).
  std::string snapshot_json() const;
  /// FNV-1a 64 of snapshot_json(), as 16 hex digits.
  std::string hash() const;

  /// Builds and validates the pipeline; rejects invalid combinations.
  PipelineConfig pipeline() const;
  ModelUnit model_unit() const;
  SynthConfig synth_base() const;
  SyntheticSuiteConfig synthetic_suite() const;
};

}  // namespace radonad::cli
