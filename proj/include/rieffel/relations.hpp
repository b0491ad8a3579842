#pragma once

#include <cstdint>
#include <vector>

#include "rieffel/linalg.hpp"

namespace rieffel {

/// Two normal operators on a common space and the scaling parameters p, q > 0.
struct NormalPair {
  NormalPair(Mat r, Mat s, double p = 1.0, double q = 1.0);

  Mat R, S;
  double p, q;
};

/// z(T) = T (1 + T^* T)^{-1/2}
Mat z_transform(const Mat& t);
/// T = z (1 - z^* z)^{-1/2}, inverse of z_transform on contractions with ||z|| < 1.
Mat z_inverse(const Mat& z);

/// Polar data of a normal operator: T = phase * modulus, phase a partial
/// isometry with initial space (ker T)^perp; singular values <= tol count as zero.
struct Polar {
  Mat phase;
  Mat modulus;
  Mat support;  // projection onto (ker T)^perp
};
Polar polar(const Mat& t, double tol = 1e-8);

/// Spectral projections of a Hermitian matrix, eigenvalues clustered at tol.
std::vector<Mat> eigenprojections(const Mat& h, double tol = 1e-8);

struct Def1Report {
  bool pass = true;
  double strong_commutation = 0.0;  // [|R|,|S|] and commutators of their eigenprojections
  double phase_commutation = 0.0;
  double scaling_r = 0.0;  // Phase(R)|S|Phase(R)^* - sqrt(pq)|S| on (ker R)^perp
  double scaling_s = 0.0;  // Phase(S)|R|Phase(S)^* - sqrt(q/p)|R| on (ker S)^perp
  double residual() const;
};

struct Def2Report {
  bool pass = true;
  double first = 0.0;   // z(R)z(S^*) - z(sqrt(pq) S^*)z(sqrt(q/p) R)
  double second = 0.0;  // z(sqrt(q/p) R)z(S) - z(sqrt(pq) S)z(R)
  double residual() const { return std::max(first, second); }
};

/// Polar-data form of the (p,q)-commutation relations.
Def1Report check_def1(const NormalPair& pair, double tol = 1e-8);
/// z-transform form of the same relations.
Def2Report check_def2(const NormalPair& pair, double tol = 1e-8);

/// Randomized pairs for comparing the two forms: strongly commuting pairs at
/// p = q = 1, the same pairs with S rotated off the common eigenbasis, and
/// pairs with orthogonal supports (and overlapping perturbations of them) at
/// random p, q.
std::vector<NormalPair> random_pairs(int count, std::uint64_t seed);

struct AgreementReport {
  int pairs = 0;
  int disagreements = 0;
  int passing = 0;  // pairs accepted by both forms
};
AgreementReport definition_agreement(const std::vector<NormalPair>& pairs, double tol = 1e-8);

}  // namespace rieffel
