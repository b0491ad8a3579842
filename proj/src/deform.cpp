#include "rieffel/deform.hpp"

#include <algorithm>
#include <sstream>

#include "rieffel/errors.hpp"

namespace rieffel {

DeformationData::DeformationData(DynamicalSystem d, TwoCocycle p) : ds(std::move(d)), psi(std::move(p)) {
  if (!(psi.group() == ds.gamma().dual())) throw StructuralError("cocycle is not defined on the dual of the acting group");
}

Vec TwistedSystem::rho(int g, const Vec& x) const {
  const auto& amb = *gp.ambient();
  Vec c = Vec::Zero(gp.gamma().order());
  c(g) = 1.0;
  Vec cs = Vec::Zero(gp.gamma().order());
  cs(gp.gamma().neg(g)) = 1.0;
  return amb.lambda_right(amb.lambda_left(c, x), cs);
}

double TwistedSystem::invariance_residual() const {
  double worst = 0.0;
  for (int g = 0; g < gp.gamma().order(); ++g)
    for (int i = 0; i < a_psi.dim(); ++i) worst = std::max(worst, a_psi.residual(rho(g, a_psi.element(i))));
  return worst;
}

std::vector<Vec> u_unitaries(const GammaProduct& gp, const TwoCocycle& psi) {
  std::vector<Vec> u;
  for (int chi = 0; chi < gp.gamma().order(); ++chi) u.push_back(gp.u_unitary(psi, chi));
  return u;
}

double u_cocycle_residual(const GammaProduct& gp, const TwoCocycle& psi) {
  const auto& amb = *gp.ambient();
  const auto u = u_unitaries(gp, psi);
  const Vec one = amb.unit();
  const auto& dual = psi.group();
  double worst = 0.0;
  for (int a = 0; a < dual.order(); ++a) {
    worst = std::max(worst, (amb.multiply(amb.adjoint(u[a]), u[a]) - one).norm());
    for (int b = 0; b < dual.order(); ++b) {
      const Vec rhs = psi(a, b).conj().value() * amb.multiply(u[a], gp.dual_action(a, u[b]));
      worst = std::max(worst, (u[dual.add(a, b)] - rhs).norm());
    }
  }
  return worst;
}

GammaProduct deform_gamma_product(const GammaProduct& gp, const TwoCocycle& psi) { return gp.deformed(psi); }

TwistedSystem deform(const DeformationData& dd) {
  GammaProduct gp = crossed_product(dd.ds).deformed(dd.psi);
  StarAlgebra a_psi = landstad_algebra(gp);
  StarAlgebra pi_a = pi_image(gp);
  if (a_psi.dim() != pi_a.dim()) {
    std::ostringstream os;
    os << "deformed algebra has dimension " << a_psi.dim() << " but A has dimension " << pi_a.dim();
    throw NumericalError(os.str());
  }
  return TwistedSystem{std::move(gp), std::move(a_psi), std::move(pi_a)};
}

double composition_residual(const GammaProduct& gp, const TwoCocycle& psi1, const TwoCocycle& psi2) {
  const GammaProduct joint = gp.deformed(psi1.multiply(psi2));
  const GammaProduct nested = gp.deformed(psi1).deformed(psi2);
  double worst = 0.0;
  for (int chi = 0; chi < gp.gamma().order(); ++chi)
    for (int i = 0; i < gp.algebra().dim(); ++i) {
      const Vec b = gp.algebra().element(i);
      worst = std::max(worst, (joint.dual_action(chi, b) - nested.dual_action(chi, b)).norm());
    }
  return worst;
}

SpanReport verify_eqgam(const TwistedSystem& ts, double tol) {
  // span{a lambda_g} lies in the algebra generated by A^Psi and lambda(Gamma),
  // which lies in B; equality of the outer two settles the claim
  const auto& amb = *ts.gp.ambient();
  const int m = ts.gp.gamma().order();
  Mat cols(amb.coord_dim(), ts.a_psi.dim() * m);
  for (int g = 0; g < m; ++g) {
    Vec c = Vec::Zero(m);
    c(g) = 1.0;
    for (int i = 0; i < ts.a_psi.dim(); ++i) cols.col(g * ts.a_psi.dim() + i) = amb.lambda_right(ts.a_psi.element(i), c);
  }
  const Mat q = orthonormal_span(cols);
  SpanReport r;
  r.dim = static_cast<int>(q.cols());
  r.expected_dim = ts.gp.algebra().dim();
  r.distance = subspace_distance(q, ts.gp.algebra().basis());
  r.pass = r.distance <= tol;
  if (!r.pass) r.message = "A^Psi lambda(Gamma) does not span B";
  return r;
}

SpanReport coboundary_transport(const DynamicalSystem& ds, const std::vector<Phase>& f, double tol) {
  const TwoCocycle psi = coboundary(ds.gamma().dual(), f);
  const TwistedSystem ts = deform(DeformationData(ds, psi));
  const auto& amb = *ts.gp.ambient();
  Vec fv(f.size()), fc(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    fv(i) = f[i].value();
    fc(i) = std::conj(fv(i));
  }
  const Vec big_f = ts.gp.embed(fv);
  const Vec big_fs = ts.gp.embed(fc);
  Mat cols(amb.coord_dim(), ts.pi_a.dim());
  for (int i = 0; i < ts.pi_a.dim(); ++i) cols.col(i) = amb.multiply(amb.multiply(big_f, ts.pi_a.element(i)), big_fs);
  const Mat q = orthonormal_span(cols);
  SpanReport r;
  r.dim = static_cast<int>(q.cols());
  r.expected_dim = ts.a_psi.dim();
  r.distance = subspace_distance(q, ts.a_psi.basis());
  r.pass = r.distance <= tol;
  if (!r.pass) r.message = "F pi(A) F^* differs from A^Psi";
  return r;
}

FaithfulReport verify_faithful(const TwistedSystem& ts, const CoordMap& pi, const AmbientPtr& target, double tol) {
  FaithfulReport r;
  const auto& b = ts.gp.algebra();
  const auto& amb = *ts.gp.ambient();
  Rng rng(0);
  std::uniform_int_distribution<int> pick(0, std::max(b.dim() - 1, 0));
  const int pairs = b.dim() <= 16 ? b.dim() * b.dim() : 200;
  for (int s = 0; s < pairs; ++s) {
    const int i = b.dim() <= 16 ? s / b.dim() : pick(rng);
    const int j = b.dim() <= 16 ? s % b.dim() : pick(rng);
    const Vec x = b.element(i), y = b.element(j);
    r.homomorphism_residual =
        std::max(r.homomorphism_residual, (pi(amb.multiply(x, y)) - target->multiply(pi(x), pi(y))).norm());
    r.homomorphism_residual = std::max(r.homomorphism_residual, (pi(amb.adjoint(x)) - target->adjoint(pi(x))).norm());
  }
  if (r.homomorphism_residual > tol) throw ValidationError("representation is not a *-homomorphism on B");

  auto rank_on = [&](const StarAlgebra& s) {
    Mat img(target->coord_dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i) img.col(i) = pi(s.element(i));
    return s.dim() ? numerical_rank(img) : 0;
  };
  r.rank_a = rank_on(ts.pi_a);
  r.rank_a_psi = rank_on(ts.a_psi);
  r.faithful_on_a = r.rank_a == ts.pi_a.dim();
  r.faithful_on_a_psi = r.rank_a_psi == ts.a_psi.dim();
  r.pass = r.faithful_on_a == r.faithful_on_a_psi;
  if (!r.pass) r.message = "faithfulness on A and on A^Psi disagree";
  return r;
}

ExactSequenceReport deform_exact_sequence(const DynamicalSystem& ds, const StarAlgebra& ideal, const TwoCocycle& psi,
                                          double tol) {
  return exact_sequence_check(ds, ideal, {psi}, tol);
}

TwistedGroupAlgebra twisted_group_algebra(const TwoCocycle& sigma) {
  const auto& g = sigma.group();
  const int m = g.order();
  TwistedGroupAlgebra out{sigma, {}, {}, {}};
  auto amb = std::make_shared<MatrixAmbient>(m);
  std::vector<Vec> gens;
  for (int mu = 0; mu < m; ++mu) {
    Mat t = Mat::Zero(m, m);
    for (int nu = 0; nu < m; ++nu) t(g.add(mu, nu), nu) = sigma(mu, nu).value();
    out.t.push_back(t);
    gens.push_back(amb->coords(t));
  }
  out.algebra = generate_algebra(amb, gens, true);
  out.blocks = block_decomposition(out.algebra).sizes;
  return out;
}

Eigen::MatrixXcd commutation_phases(const TwistedSystem& ts) {
  const auto& gamma = ts.gp.gamma();
  const auto& amb = *ts.gp.ambient();
  const int m = gamma.order();
  std::vector<Vec> x(m);
  for (int mu = 0; mu < m; ++mu) {
    Mat proj(amb.coord_dim(), ts.a_psi.dim());
    for (int i = 0; i < ts.a_psi.dim(); ++i) {
      const Vec a = ts.a_psi.element(i);
      Vec s = Vec::Zero(a.size());
      for (int g = 0; g < m; ++g) s += gamma.pairing(mu, g).conj().value() * ts.rho(g, a);
      proj.col(i) = s / static_cast<double>(m);
    }
    const Mat q = orthonormal_span(proj);
    if (q.cols() != 1) throw ValidationError("spectral subspace of the deformed algebra is not one-dimensional");
    x[mu] = q.col(0);
  }
  Eigen::MatrixXcd c(m, m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      const Vec xy = amb.multiply(x[mu], x[nu]);
      const Vec yx = amb.multiply(x[nu], x[mu]);
      const cplx k = yx.dot(xy) / yx.squaredNorm();
      if ((xy - k * yx).norm() > 1e-8 * xy.norm()) throw NumericalError("weight vectors do not commute up to a phase");
      c(mu, nu) = k;
    }
  return c;
}

KTheoryNote k_theory_note(const TwistedSystem& ts) {
  KTheoryNote k;
  k.blocks_before = static_cast<int>(block_decomposition(ts.gp.system().algebra()).sizes.size());
  k.blocks_after = static_cast<int>(block_decomposition(ts.a_psi).sizes.size());
  std::ostringstream os;
  os << "K_0 rank (number of blocks) " << k.blocks_before << " -> " << k.blocks_after
     << "; invariance of K-theory under deformation is a statement for Gamma = R^n and does not extend to "
        "finite Gamma";
  k.note = os.str();
  return k;
}

}  // namespace rieffel
