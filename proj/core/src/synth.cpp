#include "radonad/synth.hpp"

#include "radonad/error.hpp"
#include "radonad/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace radonad {
namespace {

constexpr std::uint64_t kInjectionStream = 0x5DEECE66DULL;
constexpr int kMaxPlacementAttempts = 100000;

double base_wave(const SynthConfig& cfg, std::size_t t) {
  return cfg.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / cfg.period);
}

// Segment lengths summing to `points`, as even as possible, each <= segment_length.
std::vector<std::size_t> segment_lengths(std::size_t points, std::size_t segment_length) {
  const std::size_t count = (points + segment_length - 1) / segment_length;
  std::vector<std::size_t> out(count, points / count);
  for (std::size_t i = 0; i < points % count; ++i) ++out[i];
  return out;
}

}  // namespace

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::shapelet: return "shapelet";
    case Scenario::trend: return "trend";
    case Scenario::seasonal: return "seasonal";
    case Scenario::point_global: return "point_global";
    case Scenario::point_contextual: return "point_contextual";
  }
  return "shapelet";
}

Scenario parse_scenario(const std::string& name) {
  for (auto s : all_scenarios()) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scenario '" + name +
                    "' (expected shapelet, trend, seasonal, point_global or point_contextual)");
}

bool is_point_scenario(Scenario scenario) {
  return scenario == Scenario::point_global || scenario == Scenario::point_contextual;
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> scenarios{Scenario::shapelet, Scenario::trend, Scenario::seasonal,
                                               Scenario::point_contextual, Scenario::point_global};
  return scenarios;
}

void SynthConfig::validate() const {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw ConfigError("anomaly ratio must lie in [0, 1)");
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  if (static_cast<double>(length) < 2.0 * period) throw ConfigError("series length must be at least two periods");
  if (!(amplitude > 0.0)) throw ConfigError("amplitude must be positive");
  if (!(noise >= 0.0)) throw ConfigError("noise must be >= 0");
  if (segment_length < 5) throw ConfigError("segment length must be >= 5");
  if (2 * margin >= length) throw ConfigError("margin leaves no room for anomalies");
  if (!(seasonal_period_factor > 0.0) || seasonal_period_factor == 1.0) {
    throw ConfigError("seasonal period factor must be positive and differ from 1");
  }
  if (!(trend_slope != 0.0)) throw ConfigError("trend slope must be non-zero");
  const std::size_t points = anomalous_points();
  if (points > 0 && !is_point_scenario(scenario) && points < 5) {
    throw ConfigError("ratio " + std::to_string(ratio) + " gives " + std::to_string(points) +
                      " anomalous points, below the minimum segment of 5");
  }
  const std::size_t room = length - 2 * margin;
  if (is_point_scenario(scenario) ? points > (room + 1) / 2 : points + segment_lengths(std::max<std::size_t>(points, 1), segment_length).size() > room) {
    throw ConfigError("ratio " + std::to_string(ratio) + " is infeasible for length " + std::to_string(length) +
                      " with margin " + std::to_string(margin));
  }
}

std::size_t SynthConfig::anomalous_points() const {
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(length)));
}

PointLabeledSeries generate_series(const SynthConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t n = cfg.length;
  Rng noise_rng(mix_seed(seed));
  std::vector<double> noise(n);
  for (auto& e : noise) e = cfg.noise * noise_rng.normal();

  std::vector<double> values(n);
  for (std::size_t t = 0; t < n; ++t) values[t] = base_wave(cfg, t) + noise[t];
  std::vector<std::uint8_t> mask(n, 0);

  const std::size_t points = cfg.anomalous_points();
  Rng rng(mix_seed(seed ^ kInjectionStream));
  const std::size_t lo = cfg.margin;
  const std::size_t hi = n - cfg.margin;  // exclusive

  if (points > 0 && is_point_scenario(cfg.scenario)) {
    std::size_t placed = 0;
    int attempts = 0;
    while (placed < points) {
      if (++attempts > kMaxPlacementAttempts) throw ConfigError("could not place isolated point anomalies");
      const std::size_t t = lo + static_cast<std::size_t>(rng.below(hi - lo));
      if (mask[t] || (t > 0 && mask[t - 1]) || (t + 1 < n && mask[t + 1])) continue;
      mask[t] = 1;
      ++placed;
      const double clean = base_wave(cfg, t);
      if (cfg.scenario == Scenario::point_global) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        values[t] = sign * (cfg.amplitude + 6.0 * cfg.noise + cfg.amplitude * rng.uniform(0.1, 0.5));
      } else {
        // Inside the global range, far from the local expectation.
        const double magnitude = std::max(cfg.amplitude * rng.uniform(0.4, 0.8), 5.0 * cfg.noise);
        values[t] = std::clamp(clean >= 0.0 ? clean - magnitude : clean + magnitude, -cfg.amplitude, cfg.amplitude);
      }
    }
  } else if (points > 0) {
    for (const std::size_t len : segment_lengths(points, cfg.segment_length)) {
      std::size_t start = 0;
      int attempts = 0;
      while (true) {
        if (++attempts > kMaxPlacementAttempts) throw ConfigError("could not place anomaly segments");
        start = lo + static_cast<std::size_t>(rng.below(hi - lo - len + 1));
        // Keep a one-point gap so segments never merge.
        bool free = true;
        for (std::size_t t = start > 0 ? start - 1 : 0; t <= start + len && t < n; ++t) free = free && !mask[t];
        if (free) break;
      }
      for (std::size_t j = 0; j < len; ++j) {
        const std::size_t t = start + j;
        mask[t] = 1;
        switch (cfg.scenario) {
          case Scenario::shapelet: {
            const double s = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / cfg.period);
            values[t] = cfg.amplitude * (s >= 0.0 ? 1.0 : -1.0) + noise[t];
            break;
          }
          case Scenario::trend:
            values[t] += cfg.trend_slope * cfg.amplitude * static_cast<double>(j + 1);
            break;
          case Scenario::seasonal:
            values[t] = cfg.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                                                 (cfg.period * cfg.seasonal_period_factor)) +
                        noise[t];
            break;
          default: break;
        }
      }
    }
  }
  return PointLabeledSeries(TimeSeries::univariate(values, "synth_" + to_string(cfg.scenario) + "_" + std::to_string(seed)),
                            std::move(mask));
}

std::vector<PointLabeledSeries> generate(const SynthConfig& cfg, std::size_t n_series) {
  std::vector<PointLabeledSeries> out;
  out.reserve(n_series);
  for (std::size_t i = 0; i < n_series; ++i) out.push_back(generate_series(cfg, cfg.seed ^ static_cast<std::uint64_t>(i)));
  return out;
}

std::string mask_json(const PointLabeledSeries& series, const SynthConfig& cfg) {
  nlohmann::json j;
  j["series_id"] = series.series.id();
  j["length"] = series.series.length();
  j["scenario"] = to_string(cfg.scenario);
  j["ratio"] = cfg.ratio;
  j["seed"] = cfg.seed;
  j["mask"] = series.point_labels;
  return j.dump() + "\n";
}

}  // namespace radonad
