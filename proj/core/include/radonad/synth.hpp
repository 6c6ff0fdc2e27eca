#pragma once

#include "radonad/time_series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace radonad {

/// Anomaly scenarios of the univariate sine benchmark: three collective, two point.
enum class Scenario { shapelet, trend, seasonal, point_global, point_contextual };

std::string to_string(Scenario scenario);
Scenario parse_scenario(const std::string& name);
bool is_point_scenario(Scenario scenario);
const std::vector<Scenario>& all_scenarios();

struct SynthConfig {
  std::size_t length = 200;
  double amplitude = 1.0;
  double period = 25.0;
  double noise = 0.05;
  Scenario scenario = Scenario::shapelet;
  /// Fraction of anomalous points, in [0, 1).
  double ratio = 0.1;
  std::uint64_t seed = 0;
  /// Maximum length of one collective segment.
  std::size_t segment_length = 20;
  /// Anomalies never touch the first or last `margin` points.
  std::size_t margin = 20;
  /// Trend drift per step, as a multiple of the amplitude.
  double trend_slope = 0.05;
  /// Period of seasonal segments, as a multiple of the base period.
  double seasonal_period_factor = 0.5;

  void validate() const;
  /// round(ratio * length).
  std::size_t anomalous_points() const;
};

/// One series from `seed`: A sin(2 pi t / P) plus Gaussian noise, with anomalies
/// injected from an independent stream. With ratio 0 the result is the clean base
/// signal for the same seed.
PointLabeledSeries generate_series(const SynthConfig& cfg, std::uint64_t seed);

/// `n_series` series; series i uses seed cfg.seed ^ i.
std::vector<PointLabeledSeries> generate(const SynthConfig& cfg, std::size_t n_series);

/// JSON sidecar describing the point mask of a generated series.
std::string mask_json(const PointLabeledSeries& series, const SynthConfig& cfg);

}  // namespace radonad
