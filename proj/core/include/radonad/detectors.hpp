#pragma once

#include "radonad/distances.hpp"
#include "radonad/point_features.hpp"
#include "radonad/radon_features.hpp"
#include "radonad/sphering.hpp"
#include "radonad/time_series.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radonad {

/// Direction sampling and histogram settings.
struct RadonConfig {
  std::size_t n_projections = 100;
  std::size_t n_bins = 20;
  DirectionScheme scheme = DirectionScheme::gaussian;
  std::uint64_t seed = 0;
  double pad = 0.05;

  void validate() const;
  std::size_t feature_dim() const noexcept { return n_projections * n_bins; }
};

enum class Scorer { mean_dist, knn };

std::string to_string(Scorer scorer);
Scorer parse_scorer(const std::string& name);

struct DetectorConfig {
  Scorer scorer = Scorer::mean_dist;
  DistanceKind distance = DistanceKind::l2;
  std::size_t k = 2;
  FeatureSpace space = FeatureSpace::sphered;
  EpsilonPolicy epsilon;
  /// Report squared L2 instead of the Euclidean norm (rankings are unchanged).
  bool squared_l2 = false;

  void validate() const;
};

/// A detector fitted on normal training series.
class FittedDetector {
 public:
  /// Window configuration with the resolution count fixed at fit time.
  WindowConfig window;
  DirectionSet directions;
  HistogramGrid grid;
  std::optional<SpheringModel> sphering;
  /// Raw cumulative Radon features of the training series, one row each.
  Matrix bank;
  DetectorConfig config;

  /// Recomputes the scoring-space bank and center; call after changing members.
  void finalize();

  std::size_t feature_dim() const noexcept { return static_cast<std::size_t>(bank.cols()); }
  std::size_t bank_size() const noexcept { return static_cast<std::size_t>(bank.rows()); }

  /// Raw cumulative Radon feature vector of a series.
  Vector cr_features(const TimeSeries& series) const;
  /// Maps a raw feature vector into the configured scoring space.
  Vector to_space(const Vector& cr) const;
  /// Anomaly score of a raw feature vector (higher = more anomalous).
  double score_features(const Vector& cr) const;
  /// Average distance to the k nearest bank rows, for any k in [1, bank size].
  double knn_score(const Vector& cr, std::size_t k) const;
  /// Distance to the bank mean in the scoring space.
  double mean_score(const Vector& cr) const;

  const Matrix& space_bank() const noexcept { return space_bank_; }
  const Vector& center() const noexcept { return center_; }

 private:
  double space_distance(const Vector& a, const Vector& b) const;

  Matrix space_bank_;
  Vector center_;
};

/// extract -> sample directions -> fit grid -> cumulative Radon -> (sphering) -> bank.
FittedDetector fit_detector(std::span<const TimeSeries> train, const WindowConfig& window, const RadonConfig& radon,
                            const DetectorConfig& detector, std::size_t threads = 1);

double score_series(const FittedDetector& detector, const TimeSeries& series);

std::vector<double> score_many(const FittedDetector& detector, std::span<const TimeSeries> series,
                               std::size_t threads = 1);

/// Fits a detector on every length-`context_length` window of the training series.
FittedDetector fit_window_detector(std::span<const TimeSeries> train, std::size_t context_length,
                                   const WindowConfig& window, const RadonConfig& radon,
                                   const DetectorConfig& detector, std::size_t threads = 1);

/// Scores each point by the detector score of the length-`context_length` window
/// centered on it; windows are shifted inward at the series boundaries.
std::vector<double> score_points_collective(const FittedDetector& detector, const TimeSeries& series,
                                            std::size_t context_length, std::size_t threads = 1);

struct RegressorConfig {
  std::size_t context_length = 20;
  /// Ridge strength; empty selects 1e-3 * trace(Xc^T Xc) / D.
  std::optional<double> ridge_lambda;

  void validate() const;
};

/// Predicts X_t from the cumulative Radon features of the trailing context
/// [t - L_c, t). Point features are computed inside the context only, so the
/// target never leaks into its own input.
class PointRegressor {
 public:
  WindowConfig window;
  DirectionSet directions;
  HistogramGrid grid;
  /// D feature weights followed by the intercept.
  Vector weights;
  double lambda = 0.0;
  std::size_t context_length = 20;
  /// In-sample root mean squared error of the fit.
  double training_rmse = 0.0;

  std::size_t feature_dim() const noexcept {
    return weights.size() > 0 ? static_cast<std::size_t>(weights.size() - 1) : 0;
  }
  Vector context_features(const TimeSeries& context) const;
  double predict(const TimeSeries& context) const;
};

PointRegressor fit_point_regressor(std::span<const TimeSeries> train, const WindowConfig& window,
                                   const RadonConfig& radon, const RegressorConfig& regressor,
                                   std::size_t threads = 1);

/// |prediction - X_t| for t >= L_c; the first L_c entries are 0 (unscored prefix).
std::vector<double> score_points(const PointRegressor& regressor, const TimeSeries& series, std::size_t threads = 1);

/// Solves min ||y - X w - b||^2 + lambda ||w||^2 with an unpenalized intercept.
/// Returns [w; b]. Uses the smaller of the primal and dual normal equations.
Vector ridge_solve(const Matrix& x, const Vector& y, double lambda);

}  // namespace radonad
