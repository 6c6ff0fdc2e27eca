#include "radonad/detectors.hpp"

#include "radonad/error.hpp"
#include "radonad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace radonad {

void RadonConfig::validate() const {
  if (n_projections == 0) throw ConfigError("projections must be >= 1");
  if (n_bins < 2) throw ConfigError("bins must be >= 2");
  if (!(pad >= 0.0) || !std::isfinite(pad)) throw ConfigError("pad must be a finite value >= 0");
}

std::string to_string(Scorer scorer) { return scorer == Scorer::knn ? "knn" : "mean_dist"; }

Scorer parse_scorer(const std::string& name) {
  if (name == "mean_dist") return Scorer::mean_dist;
  if (name == "knn") return Scorer::knn;
  throw ConfigError("unknown scorer '" + name + "' (expected mean_dist or knn)");
}

void DetectorConfig::validate() const {
  validate_distance(distance, space);
  if (scorer == Scorer::knn && k == 0) throw ConfigError("k must be >= 1");
  if (!(epsilon.value >= 0.0) || !std::isfinite(epsilon.value)) throw ConfigError("epsilon must be >= 0");
}

void FittedDetector::finalize() {
  if (config.space == FeatureSpace::sphered) {
    if (!sphering) throw std::logic_error("sphered detector has no sphering model");
    // Row by row through the same path as queries, so a query equal to a bank
    // member lands on exactly the same point.
    space_bank_.resize(bank.rows(), bank.cols());
    for (Eigen::Index i = 0; i < bank.rows(); ++i) space_bank_.row(i) = sphering->sphere(bank.row(i).transpose()).transpose();
    center_ = Vector::Zero(bank.cols());
  } else {
    space_bank_ = bank;
    center_ = bank.colwise().mean().transpose();
  }
}

Vector FittedDetector::cr_features(const TimeSeries& series) const {
  const auto features = extract_point_features(series, window);
  return cumulative_radon(features, directions, grid).values;
}

Vector FittedDetector::to_space(const Vector& cr) const {
  if (config.space == FeatureSpace::sphered) return sphering->sphere(cr);
  return cr;
}

double FittedDetector::space_distance(const Vector& a, const Vector& b) const {
  if (config.distance == DistanceKind::l2 && config.squared_l2) return dist_l2_squared(a, b);
  return distance(config.distance, a, b, &grid);
}

double FittedDetector::mean_score(const Vector& cr) const { return space_distance(to_space(cr), center_); }

double FittedDetector::knn_score(const Vector& cr, std::size_t k) const {
  const auto n = static_cast<std::size_t>(space_bank_.rows());
  if (k == 0 || k > n) {
    throw ConfigError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const Vector x = to_space(cr);
  std::vector<double> dists(n);
  for (std::size_t i = 0; i < n; ++i) {
    dists[i] = space_distance(x, space_bank_.row(static_cast<Eigen::Index>(i)).transpose());
  }
  std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k), dists.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += dists[i];
  return sum / static_cast<double>(k);
}

double FittedDetector::score_features(const Vector& cr) const {
  return config.scorer == Scorer::knn ? knn_score(cr, config.k) : mean_score(cr);
}

FittedDetector fit_detector(std::span<const TimeSeries> train, const WindowConfig& window, const RadonConfig& radon,
                            const DetectorConfig& detector, std::size_t threads) {
  window.validate();
  radon.validate();
  detector.validate();
  if (train.size() < 2) {
    throw std::invalid_argument("fitting needs at least 2 normal training series, got " + std::to_string(train.size()));
  }
  if (detector.scorer == Scorer::knn && detector.k > train.size()) {
    throw ConfigError("k = " + std::to_string(detector.k) + " exceeds the number of training series (" +
                      std::to_string(train.size()) + ")");
  }
  const std::size_t channels = train.front().channels();
  std::size_t min_length = train.front().length();
  for (const auto& s : train) {
    if (s.channels() != channels) throw std::invalid_argument("training series disagree on channel count");
    min_length = std::min(min_length, s.length());
  }

  FittedDetector out;
  out.config = detector;
  out.window = window;
  out.window.resolutions = window.resolutions_for(min_length);

  const std::size_t n = train.size();
  std::vector<PointFeatureMatrix> features(n);
  parallel_for(n, threads, [&](std::size_t i) { features[i] = extract_point_features(train[i], out.window); });

  const auto dim = static_cast<std::size_t>(features.front().cols());
  out.directions = sample_directions(dim, radon.n_projections, radon.scheme, radon.seed, features);

  std::vector<Matrix> projections(n);
  parallel_for(n, threads, [&](std::size_t i) { projections[i] = project(features[i], out.directions); });
  out.grid = fit_grid(projections, radon.n_bins, radon.pad);

  out.bank.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(radon.feature_dim()));
  parallel_for(n, threads, [&](std::size_t i) {
    out.bank.row(static_cast<Eigen::Index>(i)) = cumulative_radon_from_projections(projections[i], out.grid).values.transpose();
  });

  if (detector.space == FeatureSpace::sphered) out.sphering = fit_sphering(out.bank, detector.epsilon);
  out.finalize();
  return out;
}

double score_series(const FittedDetector& detector, const TimeSeries& series) {
  if (series.channels() != detector.directions.dim() / (detector.window.window_size() * *detector.window.resolutions)) {
    throw std::invalid_argument("series has " + std::to_string(series.channels()) +
                                " channels, detector was fitted on a different channel count");
  }
  return detector.score_features(detector.cr_features(series));
}

std::vector<double> score_many(const FittedDetector& detector, std::span<const TimeSeries> series,
                               std::size_t threads) {
  std::vector<double> out(series.size());
  parallel_for(series.size(), threads, [&](std::size_t i) { out[i] = score_series(detector, series[i]); });
  return out;
}

FittedDetector fit_window_detector(std::span<const TimeSeries> train, std::size_t context_length,
                                   const WindowConfig& window, const RadonConfig& radon,
                                   const DetectorConfig& detector, std::size_t threads) {
  if (context_length == 0) throw ConfigError("context length must be >= 1");
  std::vector<TimeSeries> windows;
  for (const auto& s : train) {
    auto w = sliding_windows(s, context_length);
    windows.insert(windows.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  }
  if (windows.size() < 2) {
    throw std::invalid_argument("training series are too short for context length " + std::to_string(context_length));
  }
  return fit_detector(windows, window, radon, detector, threads);
}

std::vector<double> score_points_collective(const FittedDetector& detector, const TimeSeries& series,
                                            std::size_t context_length, std::size_t threads) {
  const std::size_t length = series.length();
  if (context_length == 0 || length < context_length) {
    throw std::invalid_argument("series of length " + std::to_string(length) + " is shorter than context length " +
                                std::to_string(context_length));
  }
  const std::size_t n_windows = length - context_length + 1;
  std::vector<double> window_scores(n_windows);
  parallel_for(n_windows, threads, [&](std::size_t begin) {
    window_scores[begin] = score_series(detector, series.slice(begin, context_length));
  });
  std::vector<double> out(length);
  const std::size_t half = context_length / 2;
  for (std::size_t t = 0; t < length; ++t) {
    const std::size_t begin = std::min(t >= half ? t - half : 0, n_windows - 1);
    out[t] = window_scores[begin];
  }
  return out;
}

}  // namespace radonad
