#pragma once

#include "radonad/point_features.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace radonad {

enum class DirectionScheme { gaussian, marginals, pca };

std::string to_string(DirectionScheme scheme);
DirectionScheme parse_direction_scheme(const std::string& name);

/// Projection directions, one unit-norm row per direction (N_P x d_f).
struct DirectionSet {
  Matrix directions;
  DirectionScheme scheme = DirectionScheme::gaussian;
  std::uint64_t seed = 0;

  std::size_t count() const noexcept { return static_cast<std::size_t>(directions.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(directions.cols()); }
};

/// Draws `n_projections` directions in R^dim.
///   gaussian  - i.i.d. standard normal entries, rows normalized (seeded).
///   marginals - the first n standard basis vectors; requires n <= dim.
///   pca       - top-n eigenvectors of the covariance of all pooled training rows.
DirectionSet sample_directions(std::size_t dim, std::size_t n_projections, DirectionScheme scheme, std::uint64_t seed,
                               std::span<const PointFeatureMatrix> training_features = {});

/// Projection of every feature row on every direction: N_P x T.
Matrix project(const PointFeatureMatrix& features, const DirectionSet& dirs);

/// Per-direction uniform bin edges (N_P x (N_B + 1)), strictly increasing per row.
struct HistogramGrid {
  Matrix edges;

  std::size_t directions() const noexcept { return static_cast<std::size_t>(edges.rows()); }
  std::size_t bins() const noexcept { return edges.cols() > 0 ? static_cast<std::size_t>(edges.cols() - 1) : 0; }
  double bin_width(std::size_t direction) const;
};

/// Incremental per-direction min/max over training projections.
class GridAccumulator {
 public:
  explicit GridAccumulator(std::size_t directions);
  /// Adds an N_P x T block of projections.
  void add(const Matrix& projections);
  bool empty() const noexcept { return !seen_; }
  HistogramGrid fit(std::size_t n_bins, double pad) const;

 private:
  Vector lo_;
  Vector hi_;
  bool seen_ = false;
};

/// Uniform edges over [min - pad*range, max + pad*range] per direction; a zero range
/// becomes [v - eps, v + eps] with eps = max(1e-9, 1e-9 * |v|).
HistogramGrid fit_grid(std::span<const Matrix> training_projections, std::size_t n_bins, double pad);

/// Cumulative Radon features: N_P rows of N_B CDF values, stored row-major.
struct CRFeatures {
  std::size_t n_projections = 0;
  std::size_t n_bins = 0;
  Vector values;

  double at(std::size_t direction, std::size_t bin) const {
    return values[static_cast<Eigen::Index>(direction * n_bins + bin)];
  }
  auto row(std::size_t direction) const {
    return values.segment(static_cast<Eigen::Index>(direction * n_bins), static_cast<Eigen::Index>(n_bins));
  }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

/// Histogram CDF of each projection. Values outside the grid are clamped to the
/// nearest edge; bins are [e_i, e_{i+1}) with the last bin closed. Entry b of a row
/// is (number of points in bins <= b) / T, so every row ends at exactly 1.
CRFeatures cumulative_radon(const PointFeatureMatrix& features, const DirectionSet& dirs, const HistogramGrid& grid);

/// Same as above from precomputed projections (N_P x T).
CRFeatures cumulative_radon_from_projections(const Matrix& projections, const HistogramGrid& grid);

/// Bin index of `value` on `direction` after clamping into the grid.
std::size_t bin_index(const HistogramGrid& grid, std::size_t direction, double value);

}  // namespace radonad
