#include "radonad/detectors.hpp"
#include "radonad/error.hpp"
#include "radonad/parallel.hpp"
#include "radonad/symmetric_eigen.hpp"

#include <cmath>
#include <stdexcept>

namespace radonad {

void RegressorConfig::validate() const {
  if (context_length == 0) throw ConfigError("context length must be >= 1");
  if (ridge_lambda && (!(*ridge_lambda >= 0.0) || !std::isfinite(*ridge_lambda))) {
    throw ConfigError("ridge lambda must be a finite value >= 0");
  }
}

Vector ridge_solve(const Matrix& x, const Vector& y, double lambda) {
  if (x.rows() != y.size()) throw std::invalid_argument("ridge design and target lengths differ");
  if (x.rows() == 0) throw std::invalid_argument("ridge regression needs at least one sample");
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const Vector x_mean = x.colwise().mean().transpose();
  const double y_mean = y.mean();
  const Matrix xc = x.rowwise() - x_mean.transpose();
  const Vector yc = y.array() - y_mean;

  // (G + lambda I)^-1 applied through the eigenbasis; null directions of an
  // unregularized system get weight 0 (minimum-norm solution).
  const auto apply_inverse = [lambda](const Matrix& gram, const Vector& rhs) {
    const auto eig = symmetric_eigen(gram);
    const double top = std::max(eig.values.size() > 0 ? std::abs(eig.values[0]) : 0.0, lambda);
    const double floor = top * 1e-13;
    Vector coords = eig.vectors.transpose() * rhs;
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
      const double denom = std::max(eig.values[i], 0.0) + lambda;
      coords[i] = denom > floor && denom > 0.0 ? coords[i] / denom : 0.0;
    }
    return Vector(eig.vectors * coords);
  };

  Vector w;
  if (n <= d) {
    w = xc.transpose() * apply_inverse(xc * xc.transpose(), yc);
  } else {
    w = apply_inverse(xc.transpose() * xc, xc.transpose() * yc);
  }
  Vector out(d + 1);
  out.head(d) = w;
  out[d] = y_mean - x_mean.dot(w);
  return out;
}

Vector PointRegressor::context_features(const TimeSeries& context) const {
  return cumulative_radon(extract_point_features(context, window), directions, grid).values;
}

double PointRegressor::predict(const TimeSeries& context) const {
  const Vector f = context_features(context);
  const auto d = static_cast<Eigen::Index>(feature_dim());
  return weights.head(d).dot(f) + weights[d];
}

PointRegressor fit_point_regressor(std::span<const TimeSeries> train, const WindowConfig& window,
                                   const RadonConfig& radon, const RegressorConfig& regressor, std::size_t threads) {
  window.validate();
  radon.validate();
  regressor.validate();
  if (train.empty()) throw std::invalid_argument("point regressor needs training series");
  const std::size_t lc = regressor.context_length;

  struct Sample {
    std::size_t series;
    std::size_t t;
  };
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train[i].channels() != 1) throw std::invalid_argument("point regressor needs univariate series");
    if (train[i].length() <= lc) {
      throw std::invalid_argument("training series " + std::to_string(i) + " of length " +
                                  std::to_string(train[i].length()) + " is too short for context length " +
                                  std::to_string(lc));
    }
    for (std::size_t t = lc; t < train[i].length(); ++t) samples.push_back({i, t});
  }

  PointRegressor out;
  out.context_length = lc;
  out.window = window;
  out.window.resolutions = window.resolutions_for(lc);

  const std::size_t n = samples.size();
  std::vector<PointFeatureMatrix> features(n);
  parallel_for(n, threads, [&](std::size_t j) {
    features[j] = extract_point_features(train[samples[j].series].slice(samples[j].t - lc, lc), out.window);
  });
  out.directions = sample_directions(static_cast<std::size_t>(features.front().cols()), radon.n_projections,
                                     radon.scheme, radon.seed, features);
  std::vector<Matrix> projections(n);
  parallel_for(n, threads, [&](std::size_t j) { projections[j] = project(features[j], out.directions); });
  out.grid = fit_grid(projections, radon.n_bins, radon.pad);

  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(radon.feature_dim()));
  Vector y(static_cast<Eigen::Index>(n));
  parallel_for(n, threads, [&](std::size_t j) {
    x.row(static_cast<Eigen::Index>(j)) = cumulative_radon_from_projections(projections[j], out.grid).values.transpose();
    y[static_cast<Eigen::Index>(j)] = train[samples[j].series].at(samples[j].t);
  });

  if (regressor.ridge_lambda) {
    out.lambda = *regressor.ridge_lambda;
  } else {
    const Matrix xc = x.rowwise() - x.colwise().mean();
    out.lambda = 1e-3 * xc.squaredNorm() / static_cast<double>(x.cols());
  }
  out.weights = ridge_solve(x, y, out.lambda);

  const auto d = x.cols();
  const Vector residual = (x * out.weights.head(d)).array() + out.weights[d] - y.array();
  out.training_rmse = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  return out;
}

std::vector<double> score_points(const PointRegressor& regressor, const TimeSeries& series, std::size_t threads) {
  const std::size_t lc = regressor.context_length;
  if (series.channels() != 1) throw std::invalid_argument("point regressor scores univariate series");
  if (series.length() <= lc) {
    throw std::invalid_argument("series of length " + std::to_string(series.length()) +
                                " is too short for context length " + std::to_string(lc));
  }
  std::vector<double> out(series.length(), 0.0);
  parallel_for(series.length() - lc, threads, [&](std::size_t j) {
    const std::size_t t = lc + j;
    out[t] = std::abs(regressor.predict(series.slice(t - lc, lc)) - series.at(t));
  });
  return out;
}

}  // namespace radonad
