#include "rieffel/relations.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rieffel/errors.hpp"

namespace rieffel {

NormalPair::NormalPair(Mat r, Mat s, double pp, double qq) : R(std::move(r)), S(std::move(s)), p(pp), q(qq) {
  if (R.rows() != R.cols() || S.rows() != S.cols() || R.rows() != S.rows())
    throw StructuralError("pair must consist of square operators on one space");
  if (!(p > 0.0) || !(q > 0.0)) throw ValidationError("p and q must be strictly positive");
  if ((R.adjoint() * R - R * R.adjoint()).norm() > 1e-10) throw ValidationError("R is not normal");
  if ((S.adjoint() * S - S * S.adjoint()).norm() > 1e-10) throw ValidationError("S is not normal");
}

Mat z_transform(const Mat& t) {
  const int n = static_cast<int>(t.cols());
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(n, n) + t.adjoint() * t);
  const RVec inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return t * es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat z_inverse(const Mat& z) {
  const int n = static_cast<int>(z.cols());
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(n, n) - z.adjoint() * z);
  if (es.eigenvalues().minCoeff() <= 0.0) throw ValidationError("z-transform inverse needs ||z|| < 1");
  const RVec inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return z * es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Polar polar(const Mat& t, double tol) {
  const int n = static_cast<int>(t.cols());
  Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  Polar out{Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
  for (int i = 0; i < s.size(); ++i) {
    const Vec u = svd.matrixU().col(i), v = svd.matrixV().col(i);
    out.modulus += s(i) * v * v.adjoint();
    if (s(i) <= tol) continue;
    out.phase += u * v.adjoint();
    out.support += v * v.adjoint();
  }
  return out;
}

std::vector<Mat> eigenprojections(const Mat& h, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
  const RVec& ev = es.eigenvalues();
  std::vector<Mat> out;
  int start = 0;
  for (int i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev(i) - ev(i - 1) <= tol) continue;
    const Mat v = es.eigenvectors().middleCols(start, i - start);
    out.push_back(v * v.adjoint());
    start = i;
  }
  return out;
}

double Def1Report::residual() const {
  return std::max({strong_commutation, phase_commutation, scaling_r, scaling_s});
}

Def1Report check_def1(const NormalPair& pair, double tol) {
  const Polar r = polar(pair.R, tol), s = polar(pair.S, tol);
  Def1Report out;
  out.strong_commutation = spectral_norm(r.modulus * s.modulus - s.modulus * r.modulus);
  for (const Mat& e : eigenprojections(r.modulus, tol))
    for (const Mat& f : eigenprojections(s.modulus, tol))
      out.strong_commutation = std::max(out.strong_commutation, spectral_norm(e * f - f * e));
  out.phase_commutation = spectral_norm(r.phase * s.phase - s.phase * r.phase);
  const double a = std::sqrt(pair.p * pair.q), b = std::sqrt(pair.q / pair.p);
  out.scaling_r = spectral_norm((r.phase * s.modulus * r.phase.adjoint() - a * s.modulus) * r.support);
  out.scaling_s = spectral_norm((s.phase * r.modulus * s.phase.adjoint() - b * r.modulus) * s.support);
  out.pass = out.residual() <= tol;
  return out;
}

Def2Report check_def2(const NormalPair& pair, double tol) {
  const double a = std::sqrt(pair.p * pair.q), b = std::sqrt(pair.q / pair.p);
  const Mat sa = pair.S.adjoint();
  Def2Report out;
  out.first = spectral_norm(z_transform(pair.R) * z_transform(sa) - z_transform(a * sa) * z_transform(b * pair.R));
  out.second =
      spectral_norm(z_transform(b * pair.R) * z_transform(pair.S) - z_transform(a * pair.S) * z_transform(pair.R));
  out.pass = out.residual() <= tol;
  return out;
}

std::vector<NormalPair> random_pairs(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> dim_pick(2, 5), kind_pick(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto diag = [&](int n, double zero_chance) {
    Vec d = random_vector(rng, n);
    for (int i = 0; i < n; ++i)
      if (unit(rng) < zero_chance) d(i) = 0.0;
    return d;
  };
  std::vector<NormalPair> out;
  for (int c = 0; c < count; ++c) {
    const int n = dim_pick(rng);
    const Mat u = random_unitary(rng, n);
    const int kind = kind_pick(rng);
    if (kind <= 1) {
      // p = q = 1: commuting normals, or S moved to a rotated eigenbasis
      const Mat r = u * diag(n, 0.3).asDiagonal() * u.adjoint();
      Mat us = u;
      if (kind == 1) us = u * random_unitary(rng, n);
      const Mat s = us * diag(n, 0.3).asDiagonal() * us.adjoint();
      out.emplace_back(r, s, 1.0, 1.0);
    } else {
      // R and S on orthogonal subspaces, so every scaling condition is vacuous;
      // kind 3 rotates S so the supports overlap.
      const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
      Vec dr = diag(n, 0.0), ds = diag(n, 0.0);
      for (int i = 0; i < n; ++i) (i < k ? ds(i) : dr(i)) = 0.0;
      if (kind == 2 && unit(rng) < 0.2) dr.setZero();
      const Mat r = u * dr.asDiagonal() * u.adjoint();
      Mat us = u;
      if (kind == 3) us = u * random_unitary(rng, n);
      const Mat s = us * ds.asDiagonal() * us.adjoint();
      out.emplace_back(r, s, 0.25 + 3.0 * unit(rng), 0.25 + 3.0 * unit(rng));
    }
  }
  return out;
}

AgreementReport definition_agreement(const std::vector<NormalPair>& pairs, double tol) {
  AgreementReport out;
  for (const auto& pr : pairs) {
    const bool d1 = check_def1(pr, tol).pass, d2 = check_def2(pr, tol).pass;
    ++out.pairs;
    if (d1 != d2) ++out.disagreements;
    if (d1 && d2) ++out.passing;
  }
  return out;
}

}  // namespace rieffel
