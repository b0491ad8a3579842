#include "rieffel/gammaprod.hpp"

#include <algorithm>
#include <sstream>

#include "rieffel/errors.hpp"

namespace rieffel {

namespace {

std::shared_ptr<const MatrixAmbient> matrix_ambient(const StarAlgebra& a) {
  auto m = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  if (!m) throw StructuralError("dynamical systems need an algebra of matrices");
  return m;
}

}  // namespace

DynamicalSystem::DynamicalSystem(StarAlgebra a, FiniteAbelianGroup gamma, std::vector<Mat> u, std::string name)
    : a_(std::move(a)), gamma_(std::move(gamma)), u_(std::move(u)), name_(std::move(name)) {
  const auto amb = matrix_ambient(a_);
  const int n = amb->n();
  if (static_cast<int>(u_.size()) != gamma_.order()) throw StructuralError("need one unitary per group element");
  for (const auto& m : u_) {
    if (m.rows() != n || m.cols() != n) throw StructuralError("unitary has wrong size");
    if ((m * m.adjoint() - Mat::Identity(n, n)).norm() > 1e-10) throw ValidationError("action operator is not unitary");
  }
  if ((u_[gamma_.zero()] - Mat::Identity(n, n)).norm() > 1e-12) throw ValidationError("u_0 is not the identity");
  for (int g = 0; g < gamma_.order(); ++g)
    for (int h = 0; h < gamma_.order(); ++h)
      if ((u_[g] * u_[h] - u_[gamma_.add(g, h)]).norm() > 1e-10)
        throw ValidationError("u is not a homomorphism at (" + std::to_string(g) + "," + std::to_string(h) + ")");
  for (int g = 0; g < gamma_.order(); ++g)
    for (int i = 0; i < a_.dim(); ++i)
      if (a_.residual(amb->coords(rho(g, amb->matrix(a_.element(i))))) > 1e-9)
        throw ValidationError("action does not preserve the algebra");
}

DynamicalSystem DynamicalSystem::restrict_to(const StarAlgebra& sub, std::string name) const {
  return DynamicalSystem(sub, gamma_, u_, std::move(name));
}

StarAlgebra function_algebra(int points) {
  auto amb = std::make_shared<MatrixAmbient>(points);
  Mat basis = Mat::Zero(points * points, points);
  for (int i = 0; i < points; ++i) basis(i * points + i, i) = 1.0;
  return StarAlgebra(amb, basis);
}

Mat permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Mat m = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = 1.0;
  return m;
}

DynamicalSystem translation_system(const FiniteAbelianGroup& gamma) {
  std::vector<Mat> u;
  for (int g = 0; g < gamma.order(); ++g) {
    std::vector<int> p(gamma.order());
    for (int x = 0; x < gamma.order(); ++x) p[x] = gamma.add(x, g);
    u.push_back(permutation_matrix(p));
  }
  return DynamicalSystem(function_algebra(gamma.order()), gamma, u, "C(" + gamma.describe() + ") translation");
}

DynamicalSystem trivial_system(const StarAlgebra& a, const FiniteAbelianGroup& gamma) {
  const int n = matrix_ambient(a)->n();
  return DynamicalSystem(a, gamma, std::vector<Mat>(gamma.order(), Mat::Identity(n, n)), "trivial action");
}

DynamicalSystem permutation_system(int points, const FiniteAbelianGroup& gamma,
                                   const std::vector<std::vector<int>>& generator_perms, std::string name) {
  if (static_cast<int>(generator_perms.size()) != gamma.rank())
    throw StructuralError("need one permutation per group generator");
  std::vector<Mat> gens;
  for (const auto& p : generator_perms) {
    if (static_cast<int>(p.size()) != points) throw StructuralError("permutation has wrong length");
    std::vector<char> seen(points, 0);
    for (int v : p) {
      if (v < 0 || v >= points || seen[v]) throw ValidationError("generator image is not a permutation");
      seen[v] = 1;
    }
    gens.push_back(permutation_matrix(p));
  }
  std::vector<Mat> u;
  for (int g = 0; g < gamma.order(); ++g) {
    const auto c = gamma.coords(g);
    Mat m = Mat::Identity(points, points);
    for (int i = 0; i < gamma.rank(); ++i)
      for (int k = 0; k < c[i]; ++k) m = gens[i] * m;
    u.push_back(m);
  }
  // the homomorphism check in the constructor catches generator orders that
  // do not divide the factor orders and non-commuting generators
  return DynamicalSystem(function_algebra(points), gamma, u, name.empty() ? "permutation action" : name);
}

std::vector<int> left_regular_perm(const FiniteGroup& g, int x) {
  std::vector<int> p(g.order());
  for (int y = 0; y < g.order(); ++y) p[y] = g.mul(x, y);
  return p;
}

std::vector<int> right_regular_perm(const FiniteGroup& g, int x) {
  std::vector<int> p(g.order());
  for (int y = 0; y < g.order(); ++y) p[y] = g.mul(y, g.inv(x));
  return p;
}

DynamicalSystem left_right_system(const FiniteGroup& g, const SubgroupEmbedding& iota) {
  const auto& gamma = iota.gamma();
  const FiniteAbelianGroup g2 = gamma.product(gamma);
  std::vector<Mat> u;
  for (int ab = 0; ab < g2.order(); ++ab) {
    const int a = ab / gamma.order(), b = ab % gamma.order();
    u.push_back(permutation_matrix(left_regular_perm(g, iota(a))) * permutation_matrix(right_regular_perm(g, iota(b))));
  }
  return DynamicalSystem(function_algebra(g.order()), g2, u, "C(G) left-right");
}

// ---------------------------------------------------------------------------

CrossedAmbient::CrossedAmbient(FiniteAbelianGroup gamma, std::vector<Mat> u) : gamma_(std::move(gamma)), u_(std::move(u)) {
  const int m = gamma_.order();
  table_.n = static_cast<int>(u_.front().rows());
  table_.order = m;
  table_.add.resize(static_cast<std::size_t>(m) * m);
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) table_.add[g * m + h] = gamma_.add(g, h);
  table_.unitary = u_;
  // monomial unitaries get the O(n^2) conjugation path
  table_.permutation = true;
  for (const auto& w : u_) {
    std::vector<int> p(table_.n, -1);
    std::vector<cplx> ph(table_.n);
    for (int j = 0; j < table_.n && table_.permutation; ++j) {
      int nz = 0;
      for (int i = 0; i < table_.n; ++i)
        if (std::abs(w(i, j)) > 1e-14) {
          ++nz;
          p[j] = i;
          ph[j] = w(i, j);
        }
      if (nz != 1) table_.permutation = false;
    }
    table_.perm.push_back(p);
    table_.perm_phase.push_back(ph);
  }
  if (!table_.permutation) {
    table_.perm.clear();
    table_.perm_phase.clear();
  }
}

std::string CrossedAmbient::describe() const {
  return "M_" + std::to_string(n()) + " x| " + gamma_.describe();
}

Vec CrossedAmbient::multiply(const Vec& x, const Vec& y) const {
  Vec out(coord_dim());
  kernels::crossed_multiply(table_, x.data(), y.data(), out.data());
  return out;
}

Vec CrossedAmbient::adjoint(const Vec& x) const {
  Vec out = Vec::Zero(coord_dim());
  for (int g = 0; g < table_.order; ++g) {
    const Mat b = block(x, g);
    if (b.isZero(0.0)) continue;
    const int ng = gamma_.neg(g);
    set_block(out, ng, kernels::crossed_rho(table_, ng, b.adjoint()));
  }
  return out;
}

Mat CrossedAmbient::block(const Vec& x, int g) const {
  const int nn = n() * n();
  return Eigen::Map<const Mat>(x.data() + static_cast<std::ptrdiff_t>(g) * nn, n(), n());
}

void CrossedAmbient::set_block(Vec& x, int g, const Mat& b) const {
  const int nn = n() * n();
  Eigen::Map<Mat>(x.data() + static_cast<std::ptrdiff_t>(g) * nn, n(), n()) = b;
}

Vec CrossedAmbient::pi(const Mat& a, int g) const {
  Vec x = Vec::Zero(coord_dim());
  set_block(x, g, a);
  return x;
}

Vec CrossedAmbient::lambda_combination(const Vec& c) const {
  Vec x = Vec::Zero(coord_dim());
  const Mat id = Mat::Identity(n(), n());
  for (int g = 0; g < table_.order; ++g) set_block(x, g, c(g) * id);
  return x;
}

Vec CrossedAmbient::lambda_left(const Vec& c, const Vec& x) const {
  Vec out = Vec::Zero(coord_dim());
  const int m = table_.order;
  for (int mu = 0; mu < m; ++mu) {
    const Mat xm = block(x, mu);
    if (xm.isZero(0.0)) continue;
    for (int g = 0; g < m; ++g) {
      if (c(g) == cplx(0.0, 0.0)) continue;
      const int t = table_.add[g * m + mu];
      set_block(out, t, block(out, t) + c(g) * kernels::crossed_rho(table_, g, xm));
    }
  }
  return out;
}

Vec CrossedAmbient::lambda_right(const Vec& x, const Vec& c) const {
  Vec out = Vec::Zero(coord_dim());
  const int m = table_.order;
  for (int mu = 0; mu < m; ++mu) {
    const Mat xm = block(x, mu);
    if (xm.isZero(0.0)) continue;
    for (int g = 0; g < m; ++g) {
      if (c(g) == cplx(0.0, 0.0)) continue;
      const int t = table_.add[mu * m + g];
      set_block(out, t, block(out, t) + c(g) * xm);
    }
  }
  return out;
}

Vec CrossedAmbient::dual_action(int chi, const Vec& x) const {
  Vec out = x;
  const int nn = n() * n();
  for (int g = 0; g < table_.order; ++g) out.segment(static_cast<Eigen::Index>(g) * nn, nn) *= gamma_.pairing(chi, g).value();
  return out;
}

Mat CrossedAmbient::materialize(const Vec& x) const {
  const int m = table_.order, k = n();
  Mat out(m * k, m * k);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu)
      out.block(mu * k, nu * k, k, k) = u_[mu].adjoint() * block(x, gamma_.sub(mu, nu)) * u_[mu];
  return out;
}

Mat CrossedAmbient::canonical(const Vec& x) const {
  Mat out = Mat::Zero(n(), n());
  for (int g = 0; g < table_.order; ++g) out += block(x, g) * u_[g];
  return out;
}

// ---------------------------------------------------------------------------

GammaProduct::GammaProduct(DynamicalSystem ds, CrossedPtr ambient, StarAlgebra b, std::vector<TwoCocycle> twists)
    : ds_(std::move(ds)), amb_(std::move(ambient)), b_(std::move(b)), twists_(std::move(twists)) {
  for (const auto& t : twists_)
    if (!(t.group() == ds_.gamma().dual())) throw StructuralError("cocycle lives on the wrong dual group");
}

Vec GammaProduct::embed(const Vec& f) const { return amb_->lambda_combination(gamma().inverse_fourier(f)); }

Vec GammaProduct::u_unitary(const TwoCocycle& psi, int chi) const {
  Vec f(gamma().order());
  const auto col = psi.column(chi);
  for (int x = 0; x < gamma().order(); ++x) f(x) = col[x].value();
  return embed(f);
}

Vec GammaProduct::dual_action(int chi, const Vec& x) const {
  Vec y = amb_->dual_action(chi, x);
  for (const auto& psi : twists_) {
    Vec f(gamma().order());
    const auto col = psi.column(chi);
    for (int k = 0; k < gamma().order(); ++k) f(k) = col[k].value();
    const Vec c = gamma().inverse_fourier(f);
    // U^* has coefficients conj(c_g) at -g
    Vec cs(c.size());
    for (int g = 0; g < gamma().order(); ++g) cs(gamma().neg(g)) = std::conj(c(g));
    y = amb_->lambda_right(amb_->lambda_left(cs, y), c);
  }
  return y;
}

Vec GammaProduct::average_E(const Vec& x) const {
  Vec s = Vec::Zero(x.size());
  for (int chi = 0; chi < gamma().order(); ++chi) s += dual_action(chi, x);
  return s / static_cast<double>(gamma().order());
}

GammaProduct GammaProduct::deformed(const TwoCocycle& psi) const {
  auto t = twists_;
  t.push_back(psi);
  return GammaProduct(ds_, amb_, b_, std::move(t));
}

double GammaProduct::defining_relation_residual() const {
  double worst = 0.0;
  for (int chi = 0; chi < gamma().order(); ++chi)
    for (int g = 0; g < gamma().order(); ++g) {
      const Vec l = lambda(g);
      worst = std::max(worst, (dual_action(chi, l) - gamma().pairing(chi, g).value() * l).norm());
    }
  return worst;
}

double GammaProduct::action_homomorphism_residual() const {
  double worst = 0.0;
  const int m = gamma().order();
  for (int i = 0; i < b_.dim(); ++i) {
    const Vec b = b_.element(i);
    std::vector<Vec> img(m);
    for (int chi = 0; chi < m; ++chi) img[chi] = dual_action(chi, b);
    for (int c1 = 0; c1 < m; ++c1)
      for (int c2 = 0; c2 < m; ++c2)
        worst = std::max(worst, (img[gamma().add(c1, c2)] - dual_action(c1, img[c2])).norm());
  }
  return worst;
}

double GammaProduct::covariance_residual() const {
  double worst = 0.0;
  const auto& a = ds_.algebra();
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  for (int g = 0; g < gamma().order(); ++g) {
    const Mat lg = amb_->materialize(lambda(g));
    for (int i = 0; i < a.dim(); ++i) {
      const Mat ai = mamb->matrix(a.element(i));
      const Mat lhs = lg * amb_->materialize(amb_->pi(ai)) * lg.adjoint();
      worst = std::max(worst, (lhs - amb_->materialize(amb_->pi(ds_.rho(g, ai)))).norm());
    }
  }
  return worst;
}

int GammaProduct::dual_embedding_rank() const {
  const int m = gamma().order();
  Mat cols(amb_->coord_dim(), m);
  for (int chi = 0; chi < m; ++chi) {
    Vec d = Vec::Zero(m);
    d(chi) = 1.0;
    cols.col(chi) = embed(d);
  }
  return numerical_rank(cols);
}

GammaProduct crossed_product(const DynamicalSystem& ds) {
  auto amb = std::make_shared<CrossedAmbient>(ds.gamma(), ds.unitaries());
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(ds.algebra().ambient());
  const int k = ds.algebra().dim();
  const int m = ds.gamma().order();
  Mat basis(amb->coord_dim(), k * m);
  // {pi(a_i) lambda_g} is orthonormal when {a_i} is
  for (int g = 0; g < m; ++g)
    for (int i = 0; i < k; ++i) basis.col(g * k + i) = amb->pi(mamb->matrix(ds.algebra().element(i)), g);
  StarAlgebra b(amb, basis);
  return GammaProduct(ds, amb, b);
}

StarAlgebra pi_image(const GammaProduct& gp) {
  const auto& a = gp.system().algebra();
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  Mat basis(gp.ambient()->coord_dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) basis.col(i) = gp.ambient()->pi(mamb->matrix(a.element(i)));
  return StarAlgebra(gp.ambient(), basis);
}

StarAlgebra landstad_algebra(const GammaProduct& gp) {
  std::vector<CoordMap> group;
  for (int chi = 0; chi < gp.gamma().order(); ++chi)
    group.push_back([&gp, chi](const Vec& x) { return gp.dual_action(chi, x); });
  return fixed_point_algebra(gp.algebra(), group);
}

StarAlgebra landstad_nullspace(const GammaProduct& gp) {
  std::vector<CoordMap> gens;
  for (int i = 0; i < gp.gamma().rank(); ++i) {
    const int chi = gp.gamma().generator(i);
    gens.push_back([&gp, chi](const Vec& x) { return gp.dual_action(chi, x); });
  }
  return fixed_point_nullspace(gp.algebra(), gens);
}

// ---------------------------------------------------------------------------

MorphismReport induced_morphism(const GammaProduct& gp, const GammaProduct& gp2, const CoordMap& pi,
                                const AbelianHom& phi, double tol) {
  if (!(phi.source() == gp.gamma()) || !(phi.target() == gp2.gamma()))
    throw StructuralError("group homomorphism does not match the Gamma-products");
  MorphismReport r;
  const auto& b = gp.algebra();
  const auto& amb = *gp.ambient();
  const auto& amb2 = *gp2.ambient();

  for (int i = 0; i < b.dim(); ++i) {
    const Vec x = b.element(i);
    const Vec px = pi(x);
    r.homomorphism_residual = std::max(r.homomorphism_residual, (pi(amb.adjoint(x)) - amb2.adjoint(px)).norm());
    for (int j = 0; j < b.dim(); ++j) {
      const Vec y = b.element(j);
      r.homomorphism_residual =
          std::max(r.homomorphism_residual, (pi(amb.multiply(x, y)) - amb2.multiply(px, pi(y))).norm());
    }
  }
  if (r.homomorphism_residual > tol) throw ValidationError("map is not a *-homomorphism on B");

  for (int g = 0; g < gp.gamma().order(); ++g)
    r.lambda_residual = std::max(r.lambda_residual, (pi(gp.lambda(g)) - gp2.lambda(phi(g))).norm());
  if (r.lambda_residual > tol) throw ValidationError("map does not send lambda_g to lambda'_phi(g)");

  const AbelianHom phit = dual_hom(phi);
  for (int chi2 = 0; chi2 < gp2.gamma().order(); ++chi2)
    for (int i = 0; i < b.dim(); ++i) {
      const Vec x = b.element(i);
      const double d = (pi(gp.dual_action(phit(chi2), x)) - gp2.dual_action(chi2, pi(x))).norm();
      if (d > r.intertwining_residual) r.intertwining_residual = d;
      if (d > tol) {
        std::ostringstream os;
        os << "map does not intertwine the dual actions at dual element " << chi2 << ", basis element " << i;
        throw ValidationError(os.str());
      }
    }

  Mat img_b(amb2.coord_dim(), b.dim());
  for (int i = 0; i < b.dim(); ++i) img_b.col(i) = pi(b.element(i));
  r.surjective_on_b = numerical_rank(img_b) == gp2.algebra().dim();

  const StarAlgebra la = landstad_algebra(gp);
  const StarAlgebra la2 = landstad_algebra(gp2);
  r.source_landstad_dim = la.dim();
  r.target_landstad_dim = la2.dim();
  Mat img(amb2.coord_dim(), la.dim());
  for (int i = 0; i < la.dim(); ++i) {
    img.col(i) = pi(la.element(i));
    r.containment_residual = std::max(r.containment_residual, la2.residual(img.col(i)));
  }
  r.image_rank = la.dim() ? numerical_rank(img) : 0;
  r.surjective_on_landstad = r.image_rank == la2.dim();
  r.pass = r.containment_residual <= tol && (!r.surjective_on_b || r.surjective_on_landstad);
  if (!r.pass) r.message = "restriction to Landstad algebras fails";
  return r;
}

// ---------------------------------------------------------------------------

namespace {

StarAlgebra landstad_of(const DynamicalSystem& ds, const std::vector<TwoCocycle>& twists) {
  GammaProduct gp = crossed_product(ds);
  for (const auto& t : twists) gp = gp.deformed(t);
  return landstad_algebra(gp);
}

std::vector<int> blocks_or_empty(const StarAlgebra& a) {
  return a.dim() ? block_decomposition(a).sizes : std::vector<int>{};
}

}  // namespace

ExactSequenceReport exact_sequence_check(const DynamicalSystem& ds, const StarAlgebra& ideal,
                                         const std::vector<TwoCocycle>& twists, double tol) {
  const auto& a = ds.algebra();
  const auto mamb = matrix_ambient(a);
  const int n = mamb->n();
  if (ideal.ambient() != a.ambient() && ideal.ambient()->coord_dim() != a.ambient()->coord_dim())
    throw StructuralError("ideal lives in a different ambient");
  for (int i = 0; i < ideal.dim(); ++i) {
    if (a.residual(ideal.element(i)) > tol) throw ValidationError("ideal is not contained in A");
    for (int j = 0; j < a.dim(); ++j) {
      const Mat x = mamb->matrix(ideal.element(i)), y = mamb->matrix(a.element(j));
      if (ideal.residual(mamb->coords(x * y)) > tol || ideal.residual(mamb->coords(y * x)) > tol)
        throw ValidationError("ideal is not two-sided");
    }
    for (int g = 0; g < ds.gamma().order(); ++g)
      if (ideal.residual(mamb->coords(ds.rho(g, mamb->matrix(ideal.element(i))))) > tol)
        throw ValidationError("ideal is not invariant under the action");
  }

  // unit of the ideal: projection onto the joint range of its elements
  Mat ranges(n, n * std::max(ideal.dim(), 1));
  ranges.setZero();
  for (int i = 0; i < ideal.dim(); ++i) ranges.middleCols(i * n, n) = mamb->matrix(ideal.element(i));
  const Mat q = orthonormal_span(ranges);
  const Mat p = q * q.adjoint();
  const Mat one_minus_p = Mat::Identity(n, n) - p;
  for (int j = 0; j < a.dim(); ++j) {
    const Mat y = mamb->matrix(a.element(j));
    if ((p * y - y * p).norm() > tol) throw ValidationError("unit of the ideal is not central in A");
  }

  Mat qcols(a.ambient()->coord_dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) qcols.col(j) = mamb->coords(one_minus_p * mamb->matrix(a.element(j)));
  const StarAlgebra quotient = StarAlgebra::from_span(a.ambient(), qcols);

  const StarAlgebra li = landstad_of(ds.restrict_to(ideal, "ideal"), twists);
  const StarAlgebra la = landstad_of(ds, twists);
  const StarAlgebra lq = landstad_of(ds.restrict_to(quotient, "quotient"), twists);

  ExactSequenceReport r;
  r.ideal_dim = li.dim();
  r.algebra_dim = la.dim();
  r.quotient_dim = lq.dim();

  const auto& camb = dynamic_cast<const CrossedAmbient&>(*la.ambient());
  auto qmap = [&](const Vec& x) {
    Vec y = x;
    for (int g = 0; g < camb.gamma().order(); ++g) camb.set_block(y, g, one_minus_p * camb.block(x, g));
    return y;
  };
  Mat img(camb.coord_dim(), la.dim());
  for (int i = 0; i < la.dim(); ++i) img.col(i) = qmap(la.element(i));
  const Mat ker = la.dim() ? null_space(img) : Mat(0, 0);
  const Mat ker_span = la.dim() ? orthonormal_span(la.basis() * ker) : Mat(camb.coord_dim(), 0);
  r.kernel_distance = subspace_distance(ker_span, li.basis());
  const Mat img_span = la.dim() ? orthonormal_span(img) : Mat(camb.coord_dim(), 0);
  r.image_distance = subspace_distance(img_span, lq.basis());

  r.ideal_blocks = blocks_or_empty(li);
  r.algebra_blocks = blocks_or_empty(la);
  r.quotient_blocks = blocks_or_empty(lq);
  r.pass = r.ideal_dim + r.quotient_dim == r.algebra_dim && r.kernel_distance <= tol && r.image_distance <= tol;
  if (!r.pass) {
    std::ostringstream os;
    os << "dims " << r.ideal_dim << "+" << r.quotient_dim << " vs " << r.algebra_dim << ", kernel distance "
       << r.kernel_distance << ", image distance " << r.image_distance;
    r.message = os.str();
  }
  return r;
}

}  // namespace rieffel
