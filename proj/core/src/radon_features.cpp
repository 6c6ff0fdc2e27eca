#include "radonad/radon_features.hpp"

#include "radonad/error.hpp"
#include "radonad/rng.hpp"
#include "radonad/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radonad {

std::string to_string(DirectionScheme scheme) {
  switch (scheme) {
    case DirectionScheme::gaussian: return "gaussian";
    case DirectionScheme::marginals: return "marginals";
    case DirectionScheme::pca: return "pca";
  }
  return "gaussian";
}

DirectionScheme parse_direction_scheme(const std::string& name) {
  if (name == "gaussian") return DirectionScheme::gaussian;
  if (name == "marginals") return DirectionScheme::marginals;
  if (name == "pca") return DirectionScheme::pca;
  throw ConfigError("unknown direction scheme '" + name + "' (expected gaussian, marginals or pca)");
}

DirectionSet sample_directions(std::size_t dim, std::size_t n_projections, DirectionScheme scheme, std::uint64_t seed,
                               std::span<const PointFeatureMatrix> training_features) {
  if (n_projections == 0) throw ConfigError("number of projections must be >= 1");
  if (dim == 0) throw ConfigError("feature dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(n_projections);
  const auto d = static_cast<Eigen::Index>(dim);

  DirectionSet out;
  out.scheme = scheme;
  out.seed = seed;
  out.directions = Matrix::Zero(n, d);

  switch (scheme) {
    case DirectionScheme::gaussian: {
      Rng rng(seed);
      for (Eigen::Index p = 0; p < n; ++p) {
        double norm = 0.0;
        do {
          for (Eigen::Index j = 0; j < d; ++j) out.directions(p, j) = rng.normal();
          norm = out.directions.row(p).norm();
        } while (norm == 0.0);
        out.directions.row(p) /= norm;
      }
      break;
    }
    case DirectionScheme::marginals: {
      if (n_projections > dim) {
        throw ConfigError("marginal directions need n_projections <= feature dimension (" +
                          std::to_string(n_projections) + " > " + std::to_string(dim) + ")");
      }
      for (Eigen::Index p = 0; p < n; ++p) out.directions(p, p) = 1.0;
      break;
    }
    case DirectionScheme::pca: {
      if (training_features.empty()) throw ConfigError("pca directions require training features");
      if (n_projections > dim) {
        throw ConfigError("pca directions need n_projections <= feature dimension (" + std::to_string(n_projections) +
                          " > " + std::to_string(dim) + ")");
      }
      Vector mean = Vector::Zero(d);
      Eigen::Index rows = 0;
      for (const auto& f : training_features) {
        if (f.cols() != d) throw std::invalid_argument("training feature dimension mismatch");
        mean += f.colwise().sum().transpose();
        rows += f.rows();
      }
      if (rows < 2) throw ConfigError("pca directions need at least two training rows");
      mean /= static_cast<double>(rows);
      Matrix cov = Matrix::Zero(d, d);
      for (const auto& f : training_features) {
        const Matrix centered = f.rowwise() - mean.transpose();
        cov.noalias() += centered.transpose() * centered;
      }
      cov /= static_cast<double>(rows - 1);
      const auto eig = symmetric_eigen(cov);
      out.directions = eig.vectors.leftCols(n).transpose();
      break;
    }
  }
  return out;
}

Matrix project(const PointFeatureMatrix& features, const DirectionSet& dirs) {
  if (features.cols() != dirs.directions.cols()) {
    throw std::invalid_argument("feature dimension " + std::to_string(features.cols()) +
                                " does not match direction dimension " + std::to_string(dirs.directions.cols()));
  }
  return dirs.directions * features.transpose();
}

double HistogramGrid::bin_width(std::size_t direction) const {
  const auto p = static_cast<Eigen::Index>(direction);
  return (edges(p, edges.cols() - 1) - edges(p, 0)) / static_cast<double>(bins());
}

GridAccumulator::GridAccumulator(std::size_t directions)
    : lo_(Vector::Constant(static_cast<Eigen::Index>(directions), std::numeric_limits<double>::infinity())),
      hi_(Vector::Constant(static_cast<Eigen::Index>(directions), -std::numeric_limits<double>::infinity())) {}

void GridAccumulator::add(const Matrix& projections) {
  if (projections.rows() != lo_.size()) throw std::invalid_argument("projection block has wrong direction count");
  if (projections.cols() == 0) return;
  lo_ = lo_.cwiseMin(projections.rowwise().minCoeff());
  hi_ = hi_.cwiseMax(projections.rowwise().maxCoeff());
  seen_ = true;
}

HistogramGrid GridAccumulator::fit(std::size_t n_bins, double pad) const {
  if (n_bins < 2) throw ConfigError("number of bins must be >= 2");
  if (!(pad >= 0.0)) throw ConfigError("grid padding must be >= 0");
  if (!seen_) throw std::invalid_argument("histogram grid needs at least one training value per direction");
  const Eigen::Index n = lo_.size();
  const auto nb = static_cast<Eigen::Index>(n_bins);
  HistogramGrid grid;
  grid.edges.resize(n, nb + 1);
  for (Eigen::Index p = 0; p < n; ++p) {
    double lo = lo_[p];
    double hi = hi_[p];
    const double range = hi - lo;
    if (range > 0.0) {
      lo -= pad * range;
      hi += pad * range;
    } else {
      const double eps = std::max(1e-9, 1e-9 * std::abs(lo));
      lo -= eps;
      hi += eps;
    }
    for (Eigen::Index i = 0; i < nb; ++i) {
      grid.edges(p, i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nb);
    }
    grid.edges(p, nb) = hi;
  }
  return grid;
}

HistogramGrid fit_grid(std::span<const Matrix> training_projections, std::size_t n_bins, double pad) {
  if (training_projections.empty()) throw std::invalid_argument("histogram grid needs training projections");
  GridAccumulator acc(static_cast<std::size_t>(training_projections.front().rows()));
  for (const auto& block : training_projections) acc.add(block);
  return acc.fit(n_bins, pad);
}

std::size_t bin_index(const HistogramGrid& grid, std::size_t direction, double value) {
  const auto p = static_cast<Eigen::Index>(direction);
  const auto nb = static_cast<Eigen::Index>(grid.bins());
  const double lo = grid.edges(p, 0);
  const double hi = grid.edges(p, nb);
  if (!(value > lo)) return 0;  // also maps NaN to the first bin
  if (value >= hi) return static_cast<std::size_t>(nb - 1);
  auto b = static_cast<Eigen::Index>((value - lo) / (hi - lo) * static_cast<double>(nb));
  b = std::clamp<Eigen::Index>(b, 0, nb - 1);
  // Settle rounding so that edges(b) <= value < edges(b + 1).
  while (b > 0 && value < grid.edges(p, b)) --b;
  while (b < nb - 1 && value >= grid.edges(p, b + 1)) ++b;
  return static_cast<std::size_t>(b);
}

CRFeatures cumulative_radon_from_projections(const Matrix& projections, const HistogramGrid& grid) {
  if (projections.rows() != static_cast<Eigen::Index>(grid.directions())) {
    throw std::invalid_argument("grid was fitted for " + std::to_string(grid.directions()) + " directions, got " +
                                std::to_string(projections.rows()));
  }
  if (projections.cols() == 0) throw std::invalid_argument("cumulative Radon features need at least one point");
  const std::size_t n_p = grid.directions();
  const std::size_t n_b = grid.bins();
  const auto total = static_cast<double>(projections.cols());

  CRFeatures out;
  out.n_projections = n_p;
  out.n_bins = n_b;
  out.values.resize(static_cast<Eigen::Index>(n_p * n_b));
  std::vector<std::size_t> counts(n_b);
  for (std::size_t p = 0; p < n_p; ++p) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index t = 0; t < projections.cols(); ++t) {
      ++counts[bin_index(grid, p, projections(static_cast<Eigen::Index>(p), t))];
    }
    std::size_t running = 0;
    for (std::size_t b = 0; b < n_b; ++b) {
      running += counts[b];
      out.values[static_cast<Eigen::Index>(p * n_b + b)] = static_cast<double>(running) / total;
    }
  }
  return out;
}

CRFeatures cumulative_radon(const PointFeatureMatrix& features, const DirectionSet& dirs, const HistogramGrid& grid) {
  if (features.rows() == 0) throw std::invalid_argument("cumulative Radon features need at least one point");
  return cumulative_radon_from_projections(project(features, dirs), grid);
}

}  // namespace radonad
