#pragma once

#include <string>
#include <vector>

#include "rieffel/cocycles.hpp"
#include "rieffel/gammaprod.hpp"

namespace rieffel {

/// (A, rho, Psi): a dynamical system and a cocycle on the dual of its group.
struct DeformationData {
  DeformationData(DynamicalSystem ds, TwoCocycle psi);

  DynamicalSystem ds;
  TwoCocycle psi;
};

/// Result of the three-step deformation: the twisted Gamma-product, the
/// deformed algebra A^Psi (its Landstad algebra) and the undeformed pi(A).
struct TwistedSystem {
  GammaProduct gp;
  StarAlgebra a_psi;
  StarAlgebra pi_a;

  /// rho^Psi_g = Ad(lambda_g) restricted to A^Psi.
  Vec rho(int g, const Vec& x) const;
  /// max over g and basis of A^Psi of the distance of rho^Psi_g(x) from A^Psi.
  double invariance_residual() const;
};

/// {U_chi} with U_chi = lambda(Psi(., chi)).
std::vector<Vec> u_unitaries(const GammaProduct& gp, const TwoCocycle& psi);

/// max over pairs of ||U_{a+b} - conj Psi(a,b) U_a rhohat_a(U_b)||, with rhohat
/// the dual action of gp, plus the unitarity defect of each U.
double u_cocycle_residual(const GammaProduct& gp, const TwoCocycle& psi);

/// (B, lambda, rhohat^Psi), rhohat^Psi_chi = U_chi^* rhohat_chi(.) U_chi.
GammaProduct deform_gamma_product(const GammaProduct& gp, const TwoCocycle& psi);

/// Crossed product, twist, Landstad extraction. Throws NumericalError when
/// dim A^Psi differs from dim A.
TwistedSystem deform(const DeformationData& dd);

/// max over chi and basis b of B of ||rhohat^{Psi1 Psi2}_chi(b) - (rhohat^Psi1)^Psi2_chi(b)||.
double composition_residual(const GammaProduct& gp, const TwoCocycle& psi1, const TwoCocycle& psi2);

struct SpanReport {
  bool pass = true;
  double distance = 0.0;  // largest principal-angle sine
  int dim = 0;            // dimension of the constructed span
  int expected_dim = 0;
  std::string message;
};

/// The algebra generated by A^Psi and lambda(Gamma) against B.
SpanReport verify_eqgam(const TwistedSystem& ts, double tol = 1e-9);

/// For Psi = d f: A^Psi against F pi(A) F^* with F = embed(f).
SpanReport coboundary_transport(const DynamicalSystem& ds, const std::vector<Phase>& f, double tol = 1e-9);

struct FaithfulReport {
  bool pass = true;  // the biconditional holds
  bool faithful_on_a = false;
  bool faithful_on_a_psi = false;
  int rank_a = 0, rank_a_psi = 0;
  double homomorphism_residual = 0.0;
  std::string message;
};

/// Injectivity of a representation of B on pi(A) and on A^Psi. `pi` maps B
/// coordinates into the coordinates of `target`.
FaithfulReport verify_faithful(const TwistedSystem& ts, const CoordMap& pi, const AmbientPtr& target,
                               double tol = 1e-9);

/// Exact sequence of deformed algebras 0 -> I^Psi -> A^Psi -> (A/I)^Psi -> 0.
ExactSequenceReport deform_exact_sequence(const DynamicalSystem& ds, const StarAlgebra& ideal,
                                          const TwoCocycle& psi, double tol = 1e-9);

/// Twisted group algebra of a finite abelian group: the regular representation
/// T_mu delta_nu = sigma(mu, nu) delta_{mu+nu} and the algebra it generates.
struct TwistedGroupAlgebra {
  PhaseTable sigma;
  std::vector<Mat> t;
  StarAlgebra algebra;
  std::vector<int> blocks;
};
TwistedGroupAlgebra twisted_group_algebra(const TwoCocycle& sigma);

/// Commutation phases of A^Psi: for weight vectors x_mu (lambda_g x lambda_g^* =
/// <mu,g> x) the numbers c(mu,nu) with x_mu x_nu = c(mu,nu) x_nu x_mu. Only
/// for systems whose spectral subspaces are one-dimensional (translation
/// systems); throws otherwise.
Eigen::MatrixXcd commutation_phases(const TwistedSystem& ts);

/// Blocks before and after a deformation; number of blocks = rank of K_0.
struct KTheoryNote {
  int blocks_before = 0;
  int blocks_after = 0;
  std::string note;
};
KTheoryNote k_theory_note(const TwistedSystem& ts);

}  // namespace rieffel
