#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "rieffel/phase.hpp"

namespace rieffel {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Defaults shared by rank and span decisions.
inline constexpr double kRankTol = 1e-9;
inline constexpr double kZeroFloor = 1e-10;

using Rng = std::mt19937_64;

Vec random_vector(Rng& rng, int n);
Mat random_matrix(Rng& rng, int rows, int cols);
Mat random_hermitian(Rng& rng, int n);
Mat random_unitary(Rng& rng, int n);

/// Largest singular value.
double spectral_norm(const Mat& m);

/// Orthonormal basis of ker(m), singular values below rel_tol * sigma_max (or
/// below kZeroFloor when m vanishes) counted as zero.
Mat null_space(const Mat& m, double rel_tol = kRankTol);

/// Numerical rank with the same convention as null_space.
int numerical_rank(const Mat& m, double rel_tol = kRankTol);

/// Orthonormal basis of the column span; modified Gram-Schmidt with one
/// re-orthogonalization pass.
Mat orthonormal_span(const Mat& cols, double rel_tol = kRankTol);

/// Incremental orthonormal basis builder used by closure computations.
class SpanBuilder {
 public:
  explicit SpanBuilder(int ambient_dim, double rel_tol = kRankTol, double floor = kZeroFloor);

  /// Adds v if it is not in the current span; returns true when added.
  bool add(const Vec& v);
  /// Norm of the component of v orthogonal to the span.
  double residual(const Vec& v) const;
  int dim() const { return k_; }
  int ambient_dim() const { return static_cast<int>(q_.rows()); }
  Mat basis() const { return q_.leftCols(k_); }
  Vec column(int i) const { return q_.col(i); }

 private:
  Mat q_;
  int k_ = 0;
  double tol_, floor_;
};

/// Largest sine of the principal angles between two subspaces given by
/// orthonormal columns; 1 when dimensions differ. Computed from residuals of
/// projections so that small angles are resolved to machine precision.
double subspace_distance(const Mat& q1, const Mat& q2);

/// Residual of the projection of the columns of q2 off span q1 (max column norm).
double containment_residual(const Mat& q1, const Mat& q2);

Mat kron(const Mat& a, const Mat& b);

/// Hermitian square root of a positive semidefinite matrix.
Mat psd_sqrt(const Mat& m);

}  // namespace rieffel
