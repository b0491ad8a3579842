#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rieffel/cocycles.hpp"
#include "rieffel/groups.hpp"
#include "rieffel/kernels.hpp"
#include "rieffel/star_algebra.hpp"

namespace rieffel {

/// (A, Gamma, rho) with A a *-subalgebra of M_n and rho_g = Ad(u_g) for a
/// unitary representation u of Gamma on C^n.
class DynamicalSystem {
 public:
  /// Validates that u is a unitary homomorphism and that each rho_g preserves A.
  DynamicalSystem(StarAlgebra a, FiniteAbelianGroup gamma, std::vector<Mat> u, std::string name = "");

  const StarAlgebra& algebra() const { return a_; }
  const FiniteAbelianGroup& gamma() const { return gamma_; }
  const std::vector<Mat>& unitaries() const { return u_; }
  int n() const { return static_cast<int>(u_.front().rows()); }
  const std::string& name() const { return name_; }

  Mat rho(int g, const Mat& a) const { return u_[g] * a * u_[g].adjoint(); }
  /// Same system with A replaced by a rho-invariant subalgebra.
  DynamicalSystem restrict_to(const StarAlgebra& sub, std::string name) const;

 private:
  StarAlgebra a_;
  FiniteAbelianGroup gamma_;
  std::vector<Mat> u_;
  std::string name_;
};

/// Diagonal algebra C(X) on C^{|X|}, as a StarAlgebra over M_{|X|}.
StarAlgebra function_algebra(int points);
/// Permutation unitary e_j -> e_{perm[j]}.
Mat permutation_matrix(const std::vector<int>& perm);

/// C(Gamma) with u_g delta_x = delta_{x+g}, so (rho_g f)(x) = f(x - g).
DynamicalSystem translation_system(const FiniteAbelianGroup& gamma);
/// A with the trivial action.
DynamicalSystem trivial_system(const StarAlgebra& a, const FiniteAbelianGroup& gamma);
/// C(points) with the standard generator e_i acting by perms[i] (x -> perms[i][x]).
DynamicalSystem permutation_system(int points, const FiniteAbelianGroup& gamma,
                                   const std::vector<std::vector<int>>& generator_perms, std::string name = "");
/// C(G) with Gamma x Gamma acting by (rho_{(a,b)} f)(x) = f(a^-1 x b), u = L_a R_b.
DynamicalSystem left_right_system(const FiniteGroup& g, const SubgroupEmbedding& iota);

/// Left and right regular representations: L_g delta_y = delta_{gy},
/// R_g delta_y = delta_{y g^-1}.
std::vector<int> left_regular_perm(const FiniteGroup& g, int x);
std::vector<int> right_regular_perm(const FiniteGroup& g, int x);

/// M_n x| Gamma in block coordinates: x = sum_g pi(x_g) lambda_g, with
/// pi(a) acting on H (x) l2(Gamma) by (pi(a) xi)(g) = rho_g^-1(a) xi(g) and
/// (lambda_h xi)(g) = xi(g - h).
class CrossedAmbient final : public Ambient {
 public:
  CrossedAmbient(FiniteAbelianGroup gamma, std::vector<Mat> u);

  int coord_dim() const override { return table_.order * table_.n * table_.n; }
  Vec multiply(const Vec& x, const Vec& y) const override;
  Vec adjoint(const Vec& x) const override;
  Vec unit() const override { return pi(Mat::Identity(n(), n())); }
  std::string describe() const override;

  int n() const { return table_.n; }
  const FiniteAbelianGroup& gamma() const { return gamma_; }
  const kernels::CrossedTable& table() const { return table_; }
  const std::vector<Mat>& unitaries() const { return u_; }

  Mat block(const Vec& x, int g) const;
  void set_block(Vec& x, int g, const Mat& b) const;

  /// pi(a) lambda_g
  Vec pi(const Mat& a, int g = 0) const;
  Vec lambda(int g) const { return pi(Mat::Identity(n(), n()), g); }
  /// sum_g c_g lambda_g
  Vec lambda_combination(const Vec& c) const;
  /// (sum_g c_g lambda_g) x and x (sum_g c_g lambda_g), without general products.
  Vec lambda_left(const Vec& c, const Vec& x) const;
  Vec lambda_right(const Vec& x, const Vec& c) const;

  /// Undeformed dual action: multiplies block g by <chi, g>.
  Vec dual_action(int chi, const Vec& x) const;

  /// The operator on H (x) l2(Gamma), index g*n + i.
  Mat materialize(const Vec& x) const;
  /// pi^can(sum pi(x_g) lambda_g) = sum x_g u_g on H.
  Mat canonical(const Vec& x) const;

 private:
  FiniteAbelianGroup gamma_;
  std::vector<Mat> u_;
  kernels::CrossedTable table_;
};

using CrossedPtr = std::shared_ptr<const CrossedAmbient>;

/// (B, lambda, rhohat) realized in a crossed ambient. The dual action may be
/// twisted by a sequence of cocycles, applied in order: the k-th twist
/// deforms the Gamma-product produced by the first k-1.
class GammaProduct {
 public:
  GammaProduct(DynamicalSystem ds, CrossedPtr ambient, StarAlgebra b, std::vector<TwoCocycle> twists = {});

  const DynamicalSystem& system() const { return ds_; }
  const CrossedPtr& ambient() const { return amb_; }
  const StarAlgebra& algebra() const { return b_; }
  const FiniteAbelianGroup& gamma() const { return ds_.gamma(); }
  const std::vector<TwoCocycle>& twists() const { return twists_; }

  Vec lambda(int g) const { return amb_->lambda(g); }
  /// sum_g (F^-1 f)(g) lambda_g for f on the dual group.
  Vec embed(const Vec& f) const;
  /// U_chi = embed(x -> Psi(x, chi))
  Vec u_unitary(const TwoCocycle& psi, int chi) const;
  /// rhohat^{Psi_1...Psi_k}_chi(x) = U_k^* ... U_1^* rhohat_chi(x) U_1 ... U_k
  Vec dual_action(int chi, const Vec& x) const;
  /// (1/|Gamma|) sum_chi rhohat_chi(x)
  Vec average_E(const Vec& x) const;

  GammaProduct deformed(const TwoCocycle& psi) const;

  /// max over (chi, g) of ||rhohat_chi(lambda_g) - <chi,g> lambda_g||
  double defining_relation_residual() const;
  /// max over (chi1, chi2, basis b) of ||rhohat_{chi1+chi2}(b) - rhohat_chi1(rhohat_chi2(b))||
  double action_homomorphism_residual() const;
  /// max over g, basis a of A of ||lambda_g pi(a) lambda_g^* - pi(rho_g a)|| on materialized operators
  double covariance_residual() const;
  /// rank of {embed(delta_chi)} (must be |Gamma|)
  int dual_embedding_rank() const;

 private:
  DynamicalSystem ds_;
  CrossedPtr amb_;
  StarAlgebra b_;
  std::vector<TwoCocycle> twists_;
};

GammaProduct crossed_product(const DynamicalSystem& ds);

/// pi(A) inside the crossed ambient.
StarAlgebra pi_image(const GammaProduct& gp);

/// Fixed points of the (possibly twisted) dual action. In finite dimension the
/// continuity and f x g conditions on Landstad elements hold automatically and
/// M(B) = B, so this fixed-point algebra is the Landstad algebra.
StarAlgebra landstad_algebra(const GammaProduct& gp);
/// Same subspace from the common kernel of (rhohat_chi - id) over generators of the dual.
StarAlgebra landstad_nullspace(const GammaProduct& gp);

struct MorphismReport {
  bool pass = true;
  double homomorphism_residual = 0.0;
  double lambda_residual = 0.0;
  double intertwining_residual = 0.0;
  double containment_residual = 0.0;  // image of the Landstad algebra outside the target one
  int source_landstad_dim = 0;
  int target_landstad_dim = 0;
  int image_rank = 0;
  bool surjective_on_b = false;
  bool surjective_on_landstad = false;
  std::string message;
};

/// Checks a linear map pi: B -> B' along phi: Gamma -> Gamma' and restricts it
/// to Landstad algebras. Throws ValidationError with a witness on failure of
/// the hypotheses.
MorphismReport induced_morphism(const GammaProduct& gp, const GammaProduct& gp2, const CoordMap& pi,
                                const AbelianHom& phi, double tol = 1e-9);

struct ExactSequenceReport {
  bool pass = true;
  int ideal_dim = 0;        // Landstad algebra of the ideal
  int algebra_dim = 0;      // Landstad algebra of A
  int quotient_dim = 0;     // Landstad algebra of A/I
  double kernel_distance = 0.0;  // ker(q on L_A) vs L_I
  double image_distance = 0.0;   // q(L_A) vs L_{A/I}
  std::vector<int> ideal_blocks, algebra_blocks, quotient_blocks;
  std::string message;
};

/// The three Gamma-products of 0 -> I -> A -> A/I -> 0 (optionally twisted by
/// psi) and the exactness of the induced sequence of Landstad algebras. A/I is
/// realized as (1 - p) A with p the unit of I.
ExactSequenceReport exact_sequence_check(const DynamicalSystem& ds, const StarAlgebra& ideal,
                                         const std::vector<TwoCocycle>& twists = {}, double tol = 1e-9);

}  // namespace rieffel
