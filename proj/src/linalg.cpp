#include "rieffel/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "rieffel/errors.hpp"

namespace rieffel {

Vec random_vector(Rng& rng, int n) {
  std::normal_distribution<double> d(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(d(rng), d(rng));
  return v;
}

Mat random_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> d(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

Mat random_hermitian(Rng& rng, int n) {
  const Mat a = random_matrix(rng, n, n);
  return (a + a.adjoint()) / 2.0;
}

Mat random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n, n));
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  // fix column phases so the distribution is Haar
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // eigenvalues of the smaller Gram matrix
  const Mat g = m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

namespace {

int rank_from_singular(const RVec& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double smax = s(0);
  if (smax <= kZeroFloor) return 0;
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * smax) ++r;
  return r;
}

}  // namespace

Mat null_space(const Mat& m, double rel_tol) {
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const int r = rank_from_singular(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

int numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  return rank_from_singular(svd.singularValues(), rel_tol);
}

Mat orthonormal_span(const Mat& cols, double rel_tol) {
  SpanBuilder b(static_cast<int>(cols.rows()), rel_tol);
  for (int j = 0; j < cols.cols(); ++j) b.add(cols.col(j));
  return b.basis();
}

SpanBuilder::SpanBuilder(int ambient_dim, double rel_tol, double floor)
    : q_(ambient_dim, std::min(ambient_dim, 16)), tol_(rel_tol), floor_(floor) {}

bool SpanBuilder::add(const Vec& v) {
  if (v.size() != q_.rows()) throw StructuralError("vector length does not match span ambient");
  const double nv = v.norm();
  if (!(nv > floor_)) return false;
  Vec r = v / nv;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < k_; ++i) r -= q_.col(i) * q_.col(i).dot(r);
  const double nr = r.norm();
  if (nr <= tol_) return false;
  if (k_ == q_.cols()) q_.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(q_.rows(), 2 * q_.cols() + 1));
  q_.col(k_++) = r / nr;
  return true;
}

double SpanBuilder::residual(const Vec& v) const {
  Vec r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < k_; ++i) r -= q_.col(i) * q_.col(i).dot(r);
  return r.norm();
}

double containment_residual(const Mat& q1, const Mat& q2) {
  if (q2.cols() == 0) return 0.0;
  if (q1.cols() == 0) return q2.colwise().norm().maxCoeff();
  const Mat r = q2 - q1 * (q1.adjoint() * q2);
  return spectral_norm(r);
}

double subspace_distance(const Mat& q1, const Mat& q2) {
  if (q1.cols() != q2.cols()) return 1.0;
  if (q1.cols() == 0) return 0.0;
  return std::max(containment_residual(q1, q2), containment_residual(q2, q1));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  const RVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace rieffel
