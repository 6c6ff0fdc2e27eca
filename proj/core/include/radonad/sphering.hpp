#pragma once

#include "radonad/radon_features.hpp"
#include "radonad/time_series.hpp"

#include <span>
#include <string>

namespace radonad {

/// How the Tikhonov regularizer is chosen at fit time.
struct EpsilonPolicy {
  enum class Mode { relative, absolute };
  Mode mode = Mode::relative;
  /// relative: epsilon = value * trace(Sigma) / D (value * 1 when the trace is zero).
  /// absolute: epsilon = value.
  double value = 1e-6;

  double resolve(double trace, std::size_t dim) const;
};

/// ZCA whitening W = U diag(1 / sqrt(lambda + eps)) U^T fitted on training rows.
///
/// Only eigenpairs of the non-null spectrum are stored. When fewer than D pairs are
/// kept the remaining spectrum is exactly zero and W acts as 1 / sqrt(eps) on the
/// orthogonal complement, so sphere() costs O(D * rank) instead of O(D^2).
class SpheringModel {
 public:
  SpheringModel() = default;
  SpheringModel(Vector mean, Vector eigenvalues, Matrix basis, double epsilon);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  bool full_basis() const noexcept { return rank() == dim(); }

  const Vector& mean() const noexcept { return mean_; }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& basis() const noexcept { return basis_; }
  double epsilon() const noexcept { return epsilon_; }

  /// W (x - mu).
  Vector sphere(const Vector& x) const;
  /// Spheres each row of an N x D matrix.
  Matrix sphere_rows(const Matrix& rows) const;
  /// W applied to a difference vector (no mean subtraction).
  Vector whiten(const Vector& delta) const;

  /// Dense D x D whitener.
  Matrix whitener() const;
  /// Dense D x D covariance U diag(lambda) U^T.
  Matrix covariance() const;

 private:
  Vector mean_;
  Vector eigenvalues_;
  Matrix basis_;
  double epsilon_ = 0.0;
  Vector scales_;
  double complement_scale_ = 0.0;
};

/// Fits on an N x D matrix of training feature rows (N >= 2, all finite).
/// The eigendecomposition runs on the D x D covariance, or on the N x N Gram matrix
/// of centered rows when N - 1 < D (same non-zero spectrum).
SpheringModel fit_sphering(const Matrix& rows, const EpsilonPolicy& policy = {});
SpheringModel fit_sphering(std::span<const CRFeatures> features, const EpsilonPolicy& policy = {});

/// Stacks CR features as rows of an N x D matrix.
Matrix stack_features(std::span<const CRFeatures> features);

}  // namespace radonad
