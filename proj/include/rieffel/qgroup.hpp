#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rieffel/cocycles.hpp"
#include "rieffel/deform.hpp"
#include "rieffel/groups.hpp"
#include "rieffel/operator.hpp"
#include "rieffel/star_algebra.hpp"

namespace rieffel {

/// How identities on l2(G)^{(x)3} are evaluated: dense when the dimension is
/// below dense_limit, otherwise on seeded random probes.
struct ProbeSettings {
  int probes = 16;
  std::uint64_t seed = 0;
  int dense_limit = 4096;
};

/// G, abelian Gamma <= G, Psi on the dual of Gamma, and the operators on l2(G)
/// built from them. Basis delta_g, g = 0..|G|-1.
class GroupQuantumData {
 public:
  GroupQuantumData(FiniteGroup g, SubgroupEmbedding iota, TwoCocycle psi);

  const FiniteGroup& group() const { return g_; }
  const SubgroupEmbedding& iota() const { return iota_; }
  const FiniteAbelianGroup& gamma() const { return iota_.gamma(); }
  const TwoCocycle& psi() const { return psi_; }
  int n() const { return g_.order(); }

  /// R_g delta_y = delta_{y g^-1}, L_g delta_y = delta_{g y}
  const Mat& R(int g) const { return r_[g]; }
  const Mat& L(int g) const { return l_[g]; }
  /// (1/|Gamma|) sum_gamma conj<chi,gamma> R_iota(gamma), same with L
  const Mat& PR(int chi) const { return pr_[chi]; }
  const Mat& PL(int chi) const { return pl_[chi]; }
  /// pi^R(f) = sum_chi f(chi) P^R_chi
  Mat pi_R(const std::vector<cplx>& f) const;

  /// max of ||sum_chi P_chi - I|| and ||P_a P_b - delta_ab P_a|| for both families
  double projection_residual() const;
  /// max ||R_g L_h - L_h R_g||
  double commutation_residual() const;

 private:
  FiniteGroup g_;
  SubgroupEmbedding iota_;
  TwoCocycle psi_;
  std::vector<Mat> r_, l_, pr_, pl_;
};

/// (V f)(g, g') = f(g g', g') on l2(G) (x) l2(G), index g*|G| + g'.
Mat kac_takesaki(const FiniteGroup& g);

/// max over basis functions f of ||V (f (x) 1) V^* - Delta_G(f)||.
double kac_takesaki_comultiplication_residual(const FiniteGroup& g, const Mat& v);

struct MultiplicativeUnitaryData {
  int n = 0;
  Mat V, X, Y, W, J;
  /// largest unitarity defect among V, X, Y, W, J
  double unitarity_residual = 0.0;
};

/// X = sum Psi(a,b) P^R_a (x) P^R_b, Y = sum Psi*(a,b) P^R_a (x) P^L_b,
/// J = sum u(a) P^R_a, W = Y V X.
MultiplicativeUnitaryData build_W(const GroupQuantumData& q);

/// ||W12^* W23 W12 - W13 W23||
double pentagon_residual(const Mat& w, int n, const ProbeSettings& ps);

/// max over gamma1, gamma2 of ||(1 (x) L R) W (1 (x) L R)^* - (R_{-gamma1} (x) 1) W (R_{gamma2} (x) 1)||.
double covariance_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m);

/// Distance of X from span{R_a (x) R_b : a, b in Gamma} and of Y from
/// span{R_a (x) L_b}; both legs of X live in the group algebra of Gamma.
double leg_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m);

struct ManageabilityReport {
  bool pass = true;
  double inner_residual = 0.0;  // matrix-entry identity for W and W~
  double adjoint_slice_residual = 0.0;  // adjoint-slice identity
  long quadruples = 0;
  int samples = 0;
};

/// W[(x,t),(z,y)] = W~[(z,t),(x,y)] with W~ = (J (x) 1) W^* (J^* (x) 1) over all
/// basis quadruples (|G| <= 8) or 10^4 sampled ones, and
/// [(omega_{x,y} (x) id) W]^* = (omega_{J^* xbar, J^* ybar} (x) id) W on random x, y.
ManageabilityReport manageability_check(const MultiplicativeUnitaryData& m, double tol = 1e-9, int slice_samples = 100,
                                        std::uint64_t seed = 0);

/// (omega (x) id) W for omega with density d (omega(T) = tr(d T)).
Mat slice_first(const MultiplicativeUnitaryData& m, const Mat& density);

/// span{(omega_{e_i,e_j} (x) id) W}, closed under products and adjoints.
StarAlgebra slice_algebra(const MultiplicativeUnitaryData& m);

/// Deformation of (C(G), Gamma^2, left-right shifts) by Psi~ (x) Psi.
TwistedSystem left_right_deformation(const GroupQuantumData& q);

/// pi^can of the deformed algebra, as a subalgebra of M_|G|.
StarAlgebra canonical_image(const TwistedSystem& ts);

/// Delta(a) = W (a (x) 1) W^*
Mat comultiply(const MultiplicativeUnitaryData& m, const Mat& a);
/// (pi^can (x) pi^can) of Upsilon Delta(b) Upsilon^* for b in the crossed
/// product, Delta(pi(f) lambda_{g1,g2}) = Delta_G(f) (lambda_{g1,0} (x) lambda_{0,g2}).
Mat comultiply_crossed(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const CrossedAmbient& amb,
                       const Vec& b);

/// max over a basis of the deformed algebra of ||W(a (x) 1)W^* - comultiply_crossed(b)||
/// with a = pi^can(b).
double comultiplication_picture_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const TwistedSystem& ts);

/// max over a basis of A of ||(Delta (x) id)Delta(a) - (id (x) Delta)Delta(a)||.
double coassociativity_residual(const MultiplicativeUnitaryData& m, const StarAlgebra& a, const ProbeSettings& ps);

/// Distance of T (on C^n (x) C^n) from span{a_i (x) a_j}.
double tensor_residual(const StarAlgebra& a, const Mat& t);

/// max over a basis of A of ||Sigma Delta(a) Sigma - Delta(a)|| / ||a||.
double flip_distance(const MultiplicativeUnitaryData& m, const StarAlgebra& a);

/// V^Psi = Psi^L V Psi^R as a |G| x |G| grid of crossed-product elements.
struct CorepReport {
  double canonical_residual = 0.0;   // pi^can of the grid against the blocks of W
  double invariance_residual = 0.0;  // entries fixed by the twisted dual action
  double corep_residual = 0.0;       // (id (x) Delta^Psi) V^Psi against V^Psi_12 V^Psi_13
};
CorepReport corepresentation_check(const GroupQuantumData& q, const MultiplicativeUnitaryData& m,
                                   const TwistedSystem& ts, const ProbeSettings& ps);

struct DualReport {
  int dim = 0;
  std::vector<int> blocks;
  double span_distance = 0.0;         // slices of W^* against span{R_g}
  double implementation_residual = 0.0;  // formula against Sigma W^*(1 (x) a) W Sigma
  double coassoc_residual = 0.0;
  double antipode_residual = 0.0;     // antimultiplicativity on sampled pairs
  double antipode_range_residual = 0.0;  // kappa(A^) inside A^
};

/// Dual coproduct Sigma X^* Sigma (a (x) a) Sigma X Sigma evaluated on R_g.
Mat dual_comultiply(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Mat& a);
/// J kappa(a) J^* with kappa(R_g) = R_{g^-1}.
Mat dual_antipode(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Mat& a);
DualReport dual_quantum_group(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const ProbeSettings& ps,
                              int antipode_samples = 100);

/// Q(f) = (omega_f (x) id) W, omega_f(T) = (1/|G|) sum_h f(h) tr(T R_h^*).
Mat quantize(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Vec& f);

/// Q as a linear map C^|G| -> coordinates of M_|G|, and its inverse on A.
class Quantization {
 public:
  Quantization(const GroupQuantumData& q, const MultiplicativeUnitaryData& m);
  Mat operator()(const Vec& f) const;
  /// eta(a); throws when a is not in the range of Q.
  Vec eta(const Mat& a) const;
  int rank() const { return rank_; }
  int n() const { return n_; }

 private:
  int n_ = 0;
  int rank_ = 0;
  Mat qmat_;  // column h = coords of Q(delta_h)
};

struct HaarReport {
  int q_rank = 0;
  double h_one = 0.0;               // h(1) before normalization
  double beauty_residual = 0.0;     // Q(Q(f)h) - Q(f)Q(h)
  double trace_residual = 0.0;
  double left_invariance = 0.0;     // (h (x) id)Delta(a) - h(a) 1
  double right_invariance = 0.0;    // (id (x) h)Delta(a) - h(a) 1
  double min_gram_eigenvalue = 0.0;
  double convolution_residual = 0.0;       // with phi*a = (id (x) phi)(W(a (x) 1)W^*)
  double convolution_adjoint_residual = 0.0;  // with phi*a = (id (x) phi)(W^*(a (x) 1)W)
};

/// h(a) = <eta(1), eta(a)> / <eta(1), eta(1)> on A.
HaarReport haar_check(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const StarAlgebra& a,
                      int samples = 50, std::uint64_t seed = 0);

}  // namespace rieffel
