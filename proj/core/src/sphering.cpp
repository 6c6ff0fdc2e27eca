#include "radonad/sphering.hpp"

#include "radonad/error.hpp"
#include "radonad/symmetric_eigen.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace radonad {

double EpsilonPolicy::resolve(double trace, std::size_t dim) const {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError("epsilon must be a finite value >= 0");
  if (mode == Mode::absolute) return value;
  const double mean_variance = dim > 0 ? trace / static_cast<double>(dim) : 0.0;
  return value * (mean_variance > 0.0 ? mean_variance : 1.0);
}

SpheringModel::SpheringModel(Vector mean, Vector eigenvalues, Matrix basis, double epsilon)
    : mean_(std::move(mean)), eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)), epsilon_(epsilon) {
  if (basis_.rows() != mean_.size() || basis_.cols() != eigenvalues_.size()) {
    throw std::invalid_argument("sphering basis shape does not match mean and spectrum");
  }
  if (!(epsilon_ >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  scales_.resize(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    const double denom = std::max(eigenvalues_[i], 0.0) + epsilon_;
    if (!(denom > 0.0)) throw ConfigError("covariance is singular and epsilon is 0; use a positive epsilon");
    scales_[i] = 1.0 / std::sqrt(denom);
  }
  if (!full_basis()) {
    if (!(epsilon_ > 0.0)) {
      throw ConfigError("covariance is rank deficient (" + std::to_string(rank()) + " < " + std::to_string(dim()) +
                        ") and epsilon is 0; use a positive epsilon");
    }
    complement_scale_ = 1.0 / std::sqrt(epsilon_);
  }
}

Vector SpheringModel::whiten(const Vector& delta) const {
  if (delta.size() != mean_.size()) {
    throw std::invalid_argument("feature dimension " + std::to_string(delta.size()) + " does not match sphering dimension " +
                                std::to_string(mean_.size()));
  }
  const Vector coords = basis_.transpose() * delta;
  if (full_basis()) return basis_ * scales_.cwiseProduct(coords);
  const Vector adjust = (scales_.array() - complement_scale_).matrix().cwiseProduct(coords);
  return complement_scale_ * delta + basis_ * adjust;
}

Vector SpheringModel::sphere(const Vector& x) const {
  if (x.size() != mean_.size()) {
    throw std::invalid_argument("feature dimension " + std::to_string(x.size()) + " does not match sphering dimension " +
                                std::to_string(mean_.size()));
  }
  return whiten(x - mean_);
}

Matrix SpheringModel::sphere_rows(const Matrix& rows) const {
  if (rows.cols() != mean_.size()) throw std::invalid_argument("feature dimension does not match sphering dimension");
  const Matrix centered = rows.rowwise() - mean_.transpose();
  const Matrix coords = centered * basis_;  // N x r
  if (full_basis()) return coords * scales_.asDiagonal() * basis_.transpose();
  const Vector adjust = (scales_.array() - complement_scale_).matrix();
  return complement_scale_ * centered + coords * adjust.asDiagonal() * basis_.transpose();
}

Matrix SpheringModel::whitener() const {
  const auto d = mean_.size();
  Matrix w = basis_ * scales_.asDiagonal() * basis_.transpose();
  if (!full_basis()) w += complement_scale_ * (Matrix::Identity(d, d) - basis_ * basis_.transpose());
  return w;
}

Matrix SpheringModel::covariance() const {
  return basis_ * eigenvalues_.cwiseMax(0.0).asDiagonal() * basis_.transpose();
}

Matrix stack_features(std::span<const CRFeatures> features) {
  if (features.empty()) return {};
  const auto d = static_cast<Eigen::Index>(features.front().size());
  Matrix rows(static_cast<Eigen::Index>(features.size()), d);
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (static_cast<Eigen::Index>(features[i].size()) != d) throw std::invalid_argument("feature vectors differ in length");
    rows.row(static_cast<Eigen::Index>(i)) = features[i].values.transpose();
  }
  return rows;
}

SpheringModel fit_sphering(const Matrix& rows, const EpsilonPolicy& policy) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index d = rows.cols();
  if (n < 2) throw std::invalid_argument("sphering needs at least 2 training series, got " + std::to_string(n));
  if (!rows.allFinite()) throw std::invalid_argument("sphering training features contain non-finite values");

  Vector mean = rows.colwise().mean().transpose();
  const Matrix centered = rows.rowwise() - mean.transpose();
  const double denom = static_cast<double>(n - 1);
  const double trace = centered.squaredNorm() / denom;
  const double epsilon = policy.resolve(trace, static_cast<std::size_t>(d));

  if (n - 1 < d) {
    const Matrix gram = centered * centered.transpose() / denom;
    const auto eig = symmetric_eigen(gram);
    const double top = std::max(eig.values.size() > 0 ? eig.values[0] : 0.0, 0.0);
    const double floor = top * static_cast<double>(n) * 16.0 * std::numeric_limits<double>::epsilon();
    Eigen::Index keep = 0;
    while (keep < eig.values.size() && eig.values[keep] > floor) ++keep;
    Vector values = eig.values.head(keep);
    Matrix basis(d, keep);
    for (Eigen::Index i = 0; i < keep; ++i) {
      auto col = basis.col(i);
      col = centered.transpose() * eig.vectors.col(i);
      col /= col.norm();
      Eigen::Index arg = 0;
      col.cwiseAbs().maxCoeff(&arg);
      if (col[arg] < 0) col = -col;
    }
    return SpheringModel(std::move(mean), std::move(values), std::move(basis), epsilon);
  }

  const Matrix cov = centered.transpose() * centered / denom;
  auto eig = symmetric_eigen(cov);
  Vector values = eig.values.cwiseMax(0.0);
  return SpheringModel(std::move(mean), std::move(values), std::move(eig.vectors), epsilon);
}

SpheringModel fit_sphering(std::span<const CRFeatures> features, const EpsilonPolicy& policy) {
  return fit_sphering(stack_features(features), policy);
}

}  // namespace radonad
