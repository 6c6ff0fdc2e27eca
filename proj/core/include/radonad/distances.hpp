#pragma once

#include "radonad/radon_features.hpp"

#include <string>

namespace radonad {

enum class DistanceKind { l1, l2, swd1, swd2 };
enum class FeatureSpace { raw, sphered };

std::string to_string(DistanceKind kind);
std::string to_string(FeatureSpace space);
DistanceKind parse_distance_kind(const std::string& name);
FeatureSpace parse_feature_space(const std::string& name);

/// Throws ConfigError for sliced Wasserstein kinds on sphered features.
void validate_distance(DistanceKind kind, FeatureSpace space);

/// Sum of absolute differences.
double dist_l1(const Vector& a, const Vector& b);
/// Sum of squared differences.
double dist_l2_squared(const Vector& a, const Vector& b);
/// Euclidean norm of the difference.
double dist_l2(const Vector& a, const Vector& b);

/// Sliced Wasserstein-1 estimate: sum over directions of bin_width * sum_bins |J_a - J_b|.
double dist_swd1(const CRFeatures& a, const CRFeatures& b, const HistogramGrid& grid);

/// Sliced Wasserstein-2 estimate. Each histogram CDF is treated as piecewise linear
/// between its bin edges; the transport threshold s(theta, t) with J_a(s) = J_b(t) is
/// its inverse, and the squared displacement (s - t)^2 is integrated over the mass of
/// b, i.e. over quantile levels. Returns sqrt of the sum over directions.
double dist_swd2(const CRFeatures& a, const CRFeatures& b, const HistogramGrid& grid);

/// Generalized inverse of a piecewise-linear histogram CDF at level q in [0, 1].
/// Knots are (edge_0, 0), (edge_{i+1}, cdf_i). Flat runs resolve to their left edge.
double inverse_cdf(const HistogramGrid& grid, std::size_t direction, const CRFeatures& cdf, double q);

/// Dispatches on kind. `grid`, n_projections and n_bins are only used by the SWD kinds.
double distance(DistanceKind kind, const Vector& a, const Vector& b, const HistogramGrid* grid = nullptr);

}  // namespace radonad
