#include "radonad/distances.hpp"

#include "radonad/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace radonad {
namespace {

void check_lengths(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("feature lengths differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

void check_grid(const CRFeatures& a, const CRFeatures& b, const HistogramGrid& grid) {
  if (a.n_projections != grid.directions() || b.n_projections != grid.directions() || a.n_bins != grid.bins() ||
      b.n_bins != grid.bins() || a.size() != a.n_projections * a.n_bins || b.size() != b.n_projections * b.n_bins) {
    throw std::invalid_argument("cumulative Radon features do not match the histogram grid");
  }
}

// Segment index j >= 1 of the piecewise-linear CDF (knot levels c_0 = 0 .. c_NB = 1)
// containing level `mid`, i.e. c_{j-1} < mid < c_j. Advances monotonically from `j`.
std::size_t advance_segment(const CRFeatures& f, std::size_t p, double mid, std::size_t j) {
  const std::size_t nb = f.n_bins;
  while (j < nb && f.at(p, j - 1) <= mid) ++j;
  return j;
}

double knot_level(const CRFeatures& f, std::size_t p, std::size_t j) { return j == 0 ? 0.0 : f.at(p, j - 1); }

// Linear inverse on segment j evaluated at level q (may be an endpoint of the segment's range).
double segment_inverse(const HistogramGrid& grid, const CRFeatures& f, std::size_t p, std::size_t j, double q) {
  const auto row = static_cast<Eigen::Index>(p);
  const double c0 = knot_level(f, p, j - 1);
  const double c1 = knot_level(f, p, j);
  const double x0 = grid.edges(row, static_cast<Eigen::Index>(j - 1));
  const double x1 = grid.edges(row, static_cast<Eigen::Index>(j));
  return x0 + (q - c0) / (c1 - c0) * (x1 - x0);
}

}  // namespace

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::l1: return "L1";
    case DistanceKind::l2: return "L2";
    case DistanceKind::swd1: return "SWD1";
    case DistanceKind::swd2: return "SWD2";
  }
  return "L2";
}

std::string to_string(FeatureSpace space) { return space == FeatureSpace::raw ? "raw" : "sphered"; }

DistanceKind parse_distance_kind(const std::string& name) {
  std::string u = name;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "L1") return DistanceKind::l1;
  if (u == "L2") return DistanceKind::l2;
  if (u == "SWD1" || u == "SWD-1") return DistanceKind::swd1;
  if (u == "SWD2" || u == "SWD-2") return DistanceKind::swd2;
  throw ConfigError("unknown distance '" + name + "' (expected L1, L2, SWD1 or SWD2)");
}

FeatureSpace parse_feature_space(const std::string& name) {
  if (name == "raw") return FeatureSpace::raw;
  if (name == "sphered") return FeatureSpace::sphered;
  throw ConfigError("unknown feature space '" + name + "' (expected raw or sphered)");
}

void validate_distance(DistanceKind kind, FeatureSpace space) {
  if (space == FeatureSpace::sphered && (kind == DistanceKind::swd1 || kind == DistanceKind::swd2)) {
    throw ConfigError("sliced Wasserstein distances are only defined on raw cumulative Radon features");
  }
}

double dist_l1(const Vector& a, const Vector& b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double dist_l2_squared(const Vector& a, const Vector& b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double dist_l2(const Vector& a, const Vector& b) { return std::sqrt(dist_l2_squared(a, b)); }

double dist_swd1(const CRFeatures& a, const CRFeatures& b, const HistogramGrid& grid) {
  check_grid(a, b, grid);
  double total = 0.0;
  for (std::size_t p = 0; p < a.n_projections; ++p) {
    double sum = 0.0;
    for (std::size_t bin = 0; bin < a.n_bins; ++bin) sum += std::abs(a.at(p, bin) - b.at(p, bin));
    total += grid.bin_width(p) * sum;
  }
  return total;
}

double inverse_cdf(const HistogramGrid& grid, std::size_t p, const CRFeatures& cdf, double q) {
  const auto row = static_cast<Eigen::Index>(p);
  q = std::clamp(q, 0.0, 1.0);
  const std::size_t nb = cdf.n_bins;
  // First knot whose level reaches q.
  std::size_t j = 0;
  while (j < nb && knot_level(cdf, p, j) < q) ++j;
  const double cj = knot_level(cdf, p, j);
  if (j == 0 || cj == q) return grid.edges(row, static_cast<Eigen::Index>(j));
  return segment_inverse(grid, cdf, p, j, q);
}

double dist_swd2(const CRFeatures& a, const CRFeatures& b, const HistogramGrid& grid) {
  check_grid(a, b, grid);
  const std::size_t nb = a.n_bins;
  std::vector<double> levels;
  levels.reserve(2 * nb + 2);
  double total = 0.0;
  for (std::size_t p = 0; p < a.n_projections; ++p) {
    levels.clear();
    levels.push_back(0.0);
    levels.push_back(1.0);
    for (std::size_t bin = 0; bin < nb; ++bin) {
      levels.push_back(std::clamp(a.at(p, bin), 0.0, 1.0));
      levels.push_back(std::clamp(b.at(p, bin), 0.0, 1.0));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Between consecutive merged levels both quantile functions are linear, so the
    // squared gap integrates exactly: dq * (g0^2 + g0*g1 + g1^2) / 3.
    double integral = 0.0;
    std::size_t ja = 1;
    std::size_t jb = 1;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      const double q0 = levels[i];
      const double q1 = levels[i + 1];
      const double mid = 0.5 * (q0 + q1);
      ja = advance_segment(a, p, mid, ja);
      jb = advance_segment(b, p, mid, jb);
      const double g0 = segment_inverse(grid, a, p, ja, q0) - segment_inverse(grid, b, p, jb, q0);
      const double g1 = segment_inverse(grid, a, p, ja, q1) - segment_inverse(grid, b, p, jb, q1);
      integral += (q1 - q0) * (g0 * g0 + g0 * g1 + g1 * g1) / 3.0;
    }
    total += integral;
  }
  return std::sqrt(total);
}

double distance(DistanceKind kind, const Vector& a, const Vector& b, const HistogramGrid* grid) {
  switch (kind) {
    case DistanceKind::l1: return dist_l1(a, b);
    case DistanceKind::l2: return dist_l2(a, b);
    case DistanceKind::swd1:
    case DistanceKind::swd2: {
      if (grid == nullptr) throw std::invalid_argument("sliced Wasserstein distances need the histogram grid");
      check_lengths(a, b);
      CRFeatures fa{grid->directions(), grid->bins(), a};
      CRFeatures fb{grid->directions(), grid->bins(), b};
      return kind == DistanceKind::swd1 ? dist_swd1(fa, fb, *grid) : dist_swd2(fa, fb, *grid);
    }
  }
  throw std::invalid_argument("unknown distance kind");
}

}  // namespace radonad
