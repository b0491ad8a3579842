#include "rieffel/qgroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "rieffel/errors.hpp"
#include "rieffel/gammaprod.hpp"
#include "rieffel/kernels.hpp"

namespace rieffel {

namespace {

Mat block_of(const Mat& w, int n, int i, int j) { return w.block(i * n, j * n, n, n); }

/// Sigma T Sigma for T on C^n (x) C^n
Mat flip(const Mat& t, int n) {
  Mat out(t.rows(), t.cols());
  for (int i = 0; i < n; ++i)
    for (int i2 = 0; i2 < n; ++i2)
      for (int j = 0; j < n; ++j)
        for (int j2 = 0; j2 < n; ++j2) out(i * n + i2, j * n + j2) = t(i2 * n + i, j2 * n + j);
  return out;
}

Operator leg(const Mat& m, int n, std::vector<int> legs) { return Operator::on_legs(Operator::dense(m), {n, n, n}, legs); }

}  // namespace

GroupQuantumData::GroupQuantumData(FiniteGroup g, SubgroupEmbedding iota, TwoCocycle psi)
    : g_(std::move(g)), iota_(std::move(iota)), psi_(std::move(psi)) {
  if (!(psi_.group() == gamma().dual())) throw StructuralError("cocycle is not defined on the dual of the subgroup");
  for (int x = 0; x < g_.order(); ++x) {
    r_.push_back(permutation_matrix(right_regular_perm(g_, x)));
    l_.push_back(permutation_matrix(left_regular_perm(g_, x)));
  }
  const int m = gamma().order();
  for (int chi = 0; chi < m; ++chi) {
    Mat pr = Mat::Zero(n(), n()), pl = Mat::Zero(n(), n());
    for (int c = 0; c < m; ++c) {
      const cplx w = gamma().pairing(chi, c).conj().value() / static_cast<double>(m);
      pr += w * r_[iota_(c)];
      pl += w * l_[iota_(c)];
    }
    pr_.push_back(pr);
    pl_.push_back(pl);
  }
}

Mat GroupQuantumData::pi_R(const std::vector<cplx>& f) const {
  Mat out = Mat::Zero(n(), n());
  for (std::size_t chi = 0; chi < f.size(); ++chi) out += f[chi] * pr_[chi];
  return out;
}

double GroupQuantumData::projection_residual() const {
  double worst = 0.0;
  for (const auto* fam : {&pr_, &pl_}) {
    Mat s = Mat::Zero(n(), n());
    for (std::size_t a = 0; a < fam->size(); ++a) {
      s += (*fam)[a];
      for (std::size_t b = 0; b < fam->size(); ++b) {
        const Mat want = a == b ? (*fam)[a] : Mat::Zero(n(), n());
        worst = std::max(worst, ((*fam)[a] * (*fam)[b] - want).norm());
      }
    }
    worst = std::max(worst, (s - Mat::Identity(n(), n())).norm());
  }
  return worst;
}

double GroupQuantumData::commutation_residual() const {
  double worst = 0.0;
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b) worst = std::max(worst, (r_[a] * l_[b] - l_[b] * r_[a]).norm());
  return worst;
}

// ---------------------------------------------------------------------------

Mat kac_takesaki(const FiniteGroup& g) {
  const int n = g.order();
  Mat v = Mat::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) v(g.mul(a, g.inv(b)) * n + b, a * n + b) = 1.0;
  return v;
}

double kac_takesaki_comultiplication_residual(const FiniteGroup& g, const Mat& v) {
  const int n = g.order();
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    Vec f1 = Vec::Zero(n * n), df = Vec::Zero(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        f1(a * n + b) = a == x ? 1.0 : 0.0;
        df(a * n + b) = g.mul(a, b) == x ? 1.0 : 0.0;
      }
    const Mat lhs = v * f1.asDiagonal() * v.adjoint();
    worst = std::max(worst, (lhs - Mat(df.asDiagonal())).norm());
  }
  return worst;
}

MultiplicativeUnitaryData build_W(const GroupQuantumData& q) {
  MultiplicativeUnitaryData m;
  const int n = q.n();
  const int k = q.gamma().order();
  m.n = n;
  m.V = kac_takesaki(q.group());
  m.X = Mat::Zero(n * n, n * n);
  m.Y = Mat::Zero(n * n, n * n);
  m.J = Mat::Zero(n, n);
  const PhaseTable star = q.psi().star();
  const auto u = q.psi().u_element();
  for (int a = 0; a < k; ++a) {
    m.J += u[a].value() * q.PR(a);
    for (int b = 0; b < k; ++b) {
      m.X += q.psi()(a, b).value() * kron(q.PR(a), q.PR(b));
      m.Y += star(a, b).value() * kron(q.PR(a), q.PL(b));
    }
  }
  m.W = m.Y * m.V * m.X;
  for (const Mat* op : {&m.V, &m.X, &m.Y, &m.W, &m.J}) {
    const int d = static_cast<int>(op->rows());
    m.unitarity_residual = std::max(m.unitarity_residual, ((*op) * op->adjoint() - Mat::Identity(d, d)).norm());
  }
  return m;
}

double pentagon_residual(const Mat& w, int n, const ProbeSettings& ps) {
  const Operator w12 = leg(w, n, {0, 1}), w23 = leg(w, n, {1, 2}), w13 = leg(w, n, {0, 2});
  const Operator lhs = Operator::product({w12.adjoint(), w23, w12});
  const Operator rhs = Operator::product({w13, w23});
  return operator_distance(lhs, rhs, ps.probes, ps.seed, ps.dense_limit);
}

double covariance_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m) {
  const int n = q.n();
  const Mat id = Mat::Identity(n, n);
  double worst = 0.0;
  for (int g1 = 0; g1 < q.gamma().order(); ++g1)
    for (int g2 = 0; g2 < q.gamma().order(); ++g2) {
      const Mat lr = kron(id, q.L(q.iota()(g1)) * q.R(q.iota()(g2)));
      const Mat lhs = lr * m.W * lr.adjoint();
      const Mat rhs = kron(q.R(q.iota()(q.gamma().neg(g1))), id) * m.W * kron(q.R(q.iota()(g2)), id);
      worst = std::max(worst, spectral_norm(lhs - rhs));
    }
  return worst;
}

double leg_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m) {
  const int n = q.n();
  const int k = q.gamma().order();
  auto residual = [&](const Mat& t, bool left_second) {
    Mat proj = Mat::Zero(n * n, n * n);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const Mat e = kron(q.R(q.iota()(a)), left_second ? q.L(q.iota()(b)) : q.R(q.iota()(b)));
        proj += (e.adjoint() * t).trace() / static_cast<double>(n * n) * e;
      }
    return (t - proj).norm();
  };
  return std::max(residual(m.X, false), residual(m.Y, true));
}

ManageabilityReport manageability_check(const MultiplicativeUnitaryData& m, double tol, int slice_samples,
                                        std::uint64_t seed) {
  ManageabilityReport r;
  const int n = m.n;
  const Mat jn = kron(m.J, Mat::Identity(n, n));
  const Mat wt = jn * m.W.adjoint() * jn.adjoint();
  auto entry = [&](int x, int t, int z, int y) {
    return std::abs(m.W(x * n + t, z * n + y) - wt(z * n + t, x * n + y));
  };
  if (n <= 8) {
    for (int x = 0; x < n; ++x)
      for (int t = 0; t < n; ++t)
        for (int z = 0; z < n; ++z)
          for (int y = 0; y < n; ++y) {
            r.inner_residual = std::max(r.inner_residual, entry(x, t, z, y));
            ++r.quadruples;
          }
  } else {
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < 10000; ++s) {
      const int x = pick(rng), t = pick(rng), z = pick(rng), y = pick(rng);
      r.inner_residual = std::max(r.inner_residual, entry(x, t, z, y));
      ++r.quadruples;
    }
  }
  Rng rng(seed + 1);
  for (int s = 0; s < slice_samples; ++s) {
    Vec x = random_vector(rng, n), y = random_vector(rng, n);
    x.normalize();
    y.normalize();
    const Mat lhs = slice_first(m, y * x.adjoint()).adjoint();
    const Vec x2 = m.J.adjoint() * x.conjugate();
    const Vec y2 = m.J.adjoint() * y.conjugate();
    const Mat rhs = slice_first(m, y2 * x2.adjoint());
    r.adjoint_slice_residual = std::max(r.adjoint_slice_residual, spectral_norm(lhs - rhs));
  }
  r.samples = slice_samples;
  r.pass = r.inner_residual <= tol && r.adjoint_slice_residual <= tol;
  return r;
}

Mat slice_first(const MultiplicativeUnitaryData& m, const Mat& density) {
  return slice(m.W, Functional{density}, Leg::First, m.n, m.n);
}

StarAlgebra slice_algebra(const MultiplicativeUnitaryData& m) {
  const int n = m.n;
  auto amb = std::make_shared<MatrixAmbient>(n);
  Mat cols(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols.col(i * n + j) = amb->coords(block_of(m.W, n, i, j));
  const Mat span = orthonormal_span(cols);
  std::vector<Vec> gens;
  for (int c = 0; c < span.cols(); ++c) gens.push_back(span.col(c));
  return generate_algebra(amb, gens, false);
}

TwistedSystem left_right_deformation(const GroupQuantumData& q) {
  const DynamicalSystem ds = left_right_system(q.group(), q.iota());
  return deform(DeformationData(ds, q.psi().tilde().tensor(q.psi())));
}

StarAlgebra canonical_image(const TwistedSystem& ts) {
  const auto& amb = *ts.gp.ambient();
  auto mamb = std::make_shared<MatrixAmbient>(amb.n());
  Mat cols(amb.n() * amb.n(), ts.a_psi.dim());
  for (int i = 0; i < ts.a_psi.dim(); ++i) cols.col(i) = mamb->coords(amb.canonical(ts.a_psi.element(i)));
  return StarAlgebra::from_span(mamb, cols);
}

Mat comultiply(const MultiplicativeUnitaryData& m, const Mat& a) {
  return m.W * kron(a, Mat::Identity(m.n, m.n)) * m.W.adjoint();
}

namespace {

/// (pi^can (x) pi^can) Delta(b) before the Upsilon conjugation, applied to v.
Vec apply_untwisted_comult(const GroupQuantumData& q, const CrossedAmbient& amb, const Vec& b, const Vec& v) {
  const int n = q.n();
  const int k = q.gamma().order();
  Vec out = Vec::Zero(n * n);
  for (int c = 0; c < amb.gamma().order(); ++c) {
    const Mat blk = amb.block(b, c);
    if (blk.isZero(0.0)) continue;
    const int g1 = q.iota()(c / k), g2 = q.iota()(c % k);
    // (L_g1 (x) R_g2) delta_(y, y') = delta_(g1 y, y' g2^-1)
    for (int y = 0; y < n; ++y)
      for (int y2 = 0; y2 < n; ++y2) {
        const int a = q.group().mul(g1, y), a2 = q.group().mul(y2, q.group().inv(g2));
        out(a * n + a2) += blk.diagonal()(q.group().mul(a, a2)) * v(y * n + y2);
      }
  }
  return out;
}

}  // namespace

Mat comultiply_crossed(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const CrossedAmbient& amb,
                       const Vec& b) {
  const int d = q.n() * q.n();
  Mat delta(d, d);
  Vec e = Vec::Zero(d);
  for (int j = 0; j < d; ++j) {
    e(j) = 1.0;
    delta.col(j) = apply_untwisted_comult(q, amb, b, e);
    e(j) = 0.0;
  }
  return m.Y * delta * m.Y.adjoint();
}

double comultiplication_picture_residual(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const TwistedSystem& ts) {
  const auto& amb = *ts.gp.ambient();
  double worst = 0.0;
  for (int i = 0; i < ts.a_psi.dim(); ++i) {
    const Vec b = ts.a_psi.element(i);
    const Mat r1 = comultiply(m, amb.canonical(b));
    const Mat r2 = comultiply_crossed(q, m, amb, b);
    worst = std::max(worst, spectral_norm(r1 - r2));
  }
  return worst;
}

double coassociativity_residual(const MultiplicativeUnitaryData& m, const StarAlgebra& a, const ProbeSettings& ps) {
  const int n = m.n;
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  if (!mamb) throw StructuralError("coassociativity needs an algebra of matrices");
  const Operator w12 = leg(m.W, n, {0, 1}), w23 = leg(m.W, n, {1, 2}), w13 = leg(m.W, n, {0, 2});
  double worst = 0.0;
  if (n * n * n < ps.dense_limit) {
    // ||P a1 P^* - Q a1 Q^*|| = ||M a1 - a1 M|| with M = Q^* P unitary
    const Mat p = Operator::product({w12, w13}).materialize();
    const Mat qm = Operator::product({w23, w12}).materialize();
    const Mat mm = qm.adjoint() * p;
    const int s = n * n;
    for (int i = 0; i < a.dim(); ++i) {
      const Mat x = mamb->matrix(a.element(i));
      Mat d = Mat::Zero(n * s, n * s);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          for (int k = 0; k < n; ++k) {
            if (x(k, c) != cplx(0.0, 0.0)) d.block(r * s, c * s, s, s) += x(k, c) * mm.block(r * s, k * s, s, s);
            if (x(r, k) != cplx(0.0, 0.0)) d.block(r * s, c * s, s, s) -= x(r, k) * mm.block(k * s, c * s, s, s);
          }
      worst = std::max(worst, d.norm());
    }
    return worst;
  }
  for (int i = 0; i < a.dim(); ++i) {
    const Operator a1 = Operator::on_legs(Operator::dense(mamb->matrix(a.element(i))), {n, n, n}, {0});
    const Operator lhs = Operator::product({w12, w13, a1, w13.adjoint(), w12.adjoint()});
    const Operator rhs = Operator::product({w23, w12, a1, w12.adjoint(), w23.adjoint()});
    worst = std::max(worst, operator_distance(lhs, rhs, ps.probes, ps.seed + 1000 * i, ps.dense_limit));
  }
  return worst;
}

double tensor_residual(const StarAlgebra& a, const Mat& t) {
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  if (!mamb) throw StructuralError("tensor residual needs an algebra of matrices");
  const int n = mamb->n();
  const int k = a.dim();
  std::vector<Mat> basis;
  for (int i = 0; i < k; ++i) basis.push_back(mamb->matrix(a.element(i)));
  // S_l(i, j) = <a_l, T_ij>, c_kl = <a_k, S_l>
  Mat proj = Mat::Zero(n * n, n * n);
  for (int l = 0; l < k; ++l) {
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = (basis[l].conjugate().cwiseProduct(block_of(t, n, i, j))).sum();
    for (int kk = 0; kk < k; ++kk) {
      const cplx c = (basis[kk].conjugate().cwiseProduct(s)).sum();
      if (c != cplx(0.0, 0.0)) proj += c * kron(basis[kk], basis[l]);
    }
  }
  return (t - proj).norm();
}

double flip_distance(const MultiplicativeUnitaryData& m, const StarAlgebra& a) {
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const Mat x = mamb->matrix(a.element(i));
    const Mat d = comultiply(m, x);
    worst = std::max(worst, spectral_norm(flip(d, m.n) - d) / spectral_norm(x));
  }
  return worst;
}

// ---------------------------------------------------------------------------

CorepReport corepresentation_check(const GroupQuantumData& q, const MultiplicativeUnitaryData& m,
                                   const TwistedSystem& ts, const ProbeSettings& ps) {
  const auto& amb = *ts.gp.ambient();
  const int n = q.n();
  const int k = q.gamma().order();
  const int d = amb.coord_dim();
  using Grid = std::vector<Vec>;  // row-major n x n grid of crossed-product elements

  auto diag_point = [&](int g) {
    Mat f = Mat::Zero(n, n);
    f(g, g) = 1.0;
    return f;
  };
  // spectral projections of lambda restricted to one factor of Gamma^2
  auto lambda_projection = [&](int chi, bool left) {
    Vec c = Vec::Zero(amb.gamma().order());
    for (int g = 0; g < k; ++g)
      c(left ? g * k : g) = q.gamma().pairing(chi, g).conj().value() / static_cast<double>(k);
    return amb.lambda_combination(c);
  };
  std::vector<Vec> ql, qr;
  for (int chi = 0; chi < k; ++chi) {
    ql.push_back(lambda_projection(chi, true));
    qr.push_back(lambda_projection(chi, false));
  }
  const PhaseTable star = q.psi().star();

  Grid v(n * n), psi_l(n * n, Vec::Zero(d)), psi_r(n * n, Vec::Zero(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      v[i * n + j] = amb.pi(diag_point(q.group().mul(q.group().inv(i), j)));
      for (int a = 0; a < k; ++a) {
        const cplx p = q.PR(a)(i, j);
        if (std::abs(p) < 1e-15) continue;
        for (int b = 0; b < k; ++b) {
          psi_r[i * n + j] += p * q.psi()(a, b).value() * qr[b];
          psi_l[i * n + j] += p * star(a, b).value() * ql[b];
        }
      }
    }
  auto grid_mul = [&](const Grid& x, const Grid& y) {
    Grid out(n * n, Vec::Zero(d));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (x[i * n + l].isZero(0.0)) continue;
        for (int j = 0; j < n; ++j) {
          if (y[l * n + j].isZero(0.0)) continue;
          out[i * n + j] += amb.multiply(x[i * n + l], y[l * n + j]);
        }
      }
    return out;
  };
  const Grid vpsi = grid_mul(grid_mul(psi_l, v), psi_r);

  CorepReport r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec& b = vpsi[i * n + j];
      r.canonical_residual = std::max(r.canonical_residual, (amb.canonical(b) - block_of(m.W, n, i, j)).norm());
      for (int chi = 0; chi < amb.gamma().order(); ++chi)
        r.invariance_residual = std::max(r.invariance_residual, (ts.gp.dual_action(chi, b) - b).norm());
    }

  const int nn = n * n;
  const Mat ya = m.Y.adjoint();
  auto lhs = [&](const Vec& x) {
    Vec out = Vec::Zero(n * nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec& b = vpsi[i * n + j];
        if (b.isZero(0.0)) continue;
        const Vec t = ya * x.segment(j * nn, nn);
        out.segment(i * nn, nn) += m.Y * apply_untwisted_comult(q, amb, b, t);
      }
    return out;
  };
  const Operator w12 = leg(m.W, n, {0, 1}), w13 = leg(m.W, n, {0, 2});
  const Operator rhs = Operator::product({w12, w13});
  r.corep_residual = kernels::probe_residual(lhs, [&](const Vec& x) { return rhs.apply(x); }, n * nn, ps.probes,
                                             ps.seed);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

/// Coefficients of a in the orthogonal basis R_g (tr(R_g^* R_h) = |G| delta).
Vec group_coefficients(const GroupQuantumData& q, const Mat& a) {
  Vec c(q.n());
  for (int g = 0; g < q.n(); ++g) c(g) = (q.R(g).adjoint() * a).trace() / static_cast<double>(q.n());
  return c;
}

}  // namespace

Mat dual_comultiply(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Mat& a) {
  const Vec c = group_coefficients(q, a);
  const int n = q.n();
  Mat canonical = Mat::Zero(n * n, n * n);
  for (int g = 0; g < n; ++g)
    if (c(g) != cplx(0.0, 0.0)) canonical += c(g) * kron(q.R(g), q.R(g));
  const Mat z = flip(m.X, n);
  return z.adjoint() * canonical * z;
}

Mat dual_antipode(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Mat& a) {
  const Vec c = group_coefficients(q, a);
  Mat k = Mat::Zero(q.n(), q.n());
  for (int g = 0; g < q.n(); ++g) k += c(g) * q.R(q.group().inv(g));
  return m.J * k * m.J.adjoint();
}

DualReport dual_quantum_group(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const ProbeSettings& ps,
                              int antipode_samples) {
  DualReport r;
  const int n = q.n();
  auto amb = std::make_shared<MatrixAmbient>(n);
  const Mat ws = m.W.adjoint();
  Mat slices(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat dens = Mat::Zero(n, n);
      dens(j, i) = 1.0;
      slices.col(i * n + j) = amb->coords(slice(ws, Functional{dens}, Leg::Second, n, n));
    }
  Mat rg(n * n, n);
  for (int g = 0; g < n; ++g) rg.col(g) = amb->coords(q.R(g));
  const Mat s1 = orthonormal_span(slices);
  const Mat s2 = orthonormal_span(rg);
  r.dim = static_cast<int>(s1.cols());
  r.span_distance = subspace_distance(s1, s2);
  const StarAlgebra ahat(amb, s1);
  r.blocks = block_decomposition(ahat).sizes;

  std::vector<Mat> dg(n);
  for (int g = 0; g < n; ++g) {
    dg[g] = dual_comultiply(q, m, q.R(g));
    const Mat implemented = flip(ws * kron(Mat::Identity(n, n), q.R(g)) * m.W, n);
    r.implementation_residual = std::max(r.implementation_residual, spectral_norm(dg[g] - implemented));
  }

  for (int g = 0; g < n; ++g) {
    std::vector<Operator> left, right;
    std::vector<std::tuple<cplx, int, int>> terms;
    Mat expansion = Mat::Zero(n * n, n * n);
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        const Mat e = kron(q.R(h), q.R(k));
        const cplx c = (e.adjoint() * dg[g]).trace() / static_cast<double>(n * n);
        if (std::abs(c) < 1e-14) continue;
        expansion += c * e;
        terms.emplace_back(c, h, k);
        left.push_back(Operator::scaled(c, Operator::kron(Operator::dense(dg[h]), Operator::dense(q.R(k)))));
        right.push_back(Operator::scaled(c, Operator::kron(Operator::dense(q.R(h)), Operator::dense(dg[k]))));
      }
    r.coassoc_residual = std::max(r.coassoc_residual, (expansion - dg[g]).norm());
    if (n * n * n < ps.dense_limit) {
      // Frobenius norm, an upper bound for the operator norm
      Mat diff = Mat::Zero(n * n * n, n * n * n);
      for (const auto& [c, h, k] : terms) diff += c * (kron(dg[h], q.R(k)) - kron(q.R(h), dg[k]));
      r.coassoc_residual = std::max(r.coassoc_residual, diff.norm());
    } else {
      r.coassoc_residual = std::max(r.coassoc_residual, operator_distance(Operator::sum(left), Operator::sum(right),
                                                                          ps.probes, ps.seed + g, ps.dense_limit));
    }
  }

  Rng rng(ps.seed + 7);
  auto random_element = [&]() {
    const Vec c = random_vector(rng, n);
    Mat a = Mat::Zero(n, n);
    for (int g = 0; g < n; ++g) a += c(g) * q.R(g);
    return Mat(a / spectral_norm(a));
  };
  for (int s = 0; s < antipode_samples; ++s) {
    const Mat a = random_element(), b = random_element();
    const Mat ka = dual_antipode(q, m, a), kb = dual_antipode(q, m, b);
    r.antipode_residual = std::max(r.antipode_residual, spectral_norm(dual_antipode(q, m, a * b) - kb * ka));
    const Vec proj = s2 * (s2.adjoint() * amb->coords(ka));
    r.antipode_range_residual = std::max(r.antipode_range_residual, (amb->coords(ka) - proj).norm());
  }
  return r;
}

// ---------------------------------------------------------------------------

Mat quantize(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const Vec& f) {
  Mat dens = Mat::Zero(q.n(), q.n());
  for (int h = 0; h < q.n(); ++h) dens += f(h) * q.R(h).adjoint();
  return slice_first(m, dens / static_cast<double>(q.n()));
}

Quantization::Quantization(const GroupQuantumData& q, const MultiplicativeUnitaryData& m) : n_(q.n()) {
  qmat_.resize(n_ * n_, n_);
  for (int h = 0; h < n_; ++h) {
    Vec e = Vec::Zero(n_);
    e(h) = 1.0;
    const Mat qh = quantize(q, m, e);
    qmat_.col(h) = Eigen::Map<const Vec>(qh.data(), qh.size());
  }
  rank_ = numerical_rank(qmat_);
}

Mat Quantization::operator()(const Vec& f) const {
  const Vec c = qmat_ * f;
  return Eigen::Map<const Mat>(c.data(), n_, n_);
}

Vec Quantization::eta(const Mat& a) const {
  const Vec x = Eigen::Map<const Vec>(a.data(), a.size());
  const Vec f = qmat_.colPivHouseholderQr().solve(x);
  if ((qmat_ * f - x).norm() > 1e-8 * std::max(1.0, x.norm())) throw ValidationError("operator is not a quantization");
  return f;
}

HaarReport haar_check(const GroupQuantumData& q, const MultiplicativeUnitaryData& m, const StarAlgebra& a, int samples,
                      std::uint64_t seed) {
  HaarReport r;
  const int n = q.n();
  const Quantization qz(q, m);
  r.q_rank = qz.rank();
  if (r.q_rank != n) throw NumericalError("quantization map is not injective");
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  const int k = a.dim();
  std::vector<Mat> basis;
  for (int i = 0; i < k; ++i) basis.push_back(mamb->matrix(a.element(i)));

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec f = random_vector(rng, n).normalized();
    const Vec h = random_vector(rng, n).normalized();
    const Mat qf = qz(f);
    r.beauty_residual = std::max(r.beauty_residual, spectral_norm(qz(qf * h) - qf * qz(h)));
  }

  const Vec eta1 = qz.eta(Mat::Identity(n, n));
  r.h_one = eta1.squaredNorm();
  auto haar = [&](const Mat& x) { return eta1.dot(qz.eta(x)) / r.h_one; };

  std::vector<Vec> etas;
  Vec hv(k);
  for (int i = 0; i < k; ++i) {
    etas.push_back(qz.eta(basis[i]));
    hv(i) = eta1.dot(etas.back()) / r.h_one;
  }
  Mat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = etas[i].dot(etas[j]);
  Eigen::SelfAdjointEigenSolver<Mat> es((gram + gram.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  r.min_gram_eigenvalue = es.eigenvalues().minCoeff();

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      r.trace_residual =
          std::max(r.trace_residual, std::abs(haar(basis[i] * basis[j]) - haar(basis[j] * basis[i])));

  // h as a density on M_n supported in A: h(x) = tr(H^* x)
  Mat hh = Mat::Zero(n, n);
  for (int i = 0; i < k; ++i) hh += std::conj(hv(i)) * basis[i];
  const Functional hf{hh.adjoint()};
  const Mat id = Mat::Identity(n, n);
  for (int i = 0; i < k; ++i) {
    const Mat d = comultiply(m, basis[i]);
    r.right_invariance = std::max(r.right_invariance, spectral_norm(slice(d, hf, Leg::Second, n, n) - hv(i) * id));
    r.left_invariance = std::max(r.left_invariance, spectral_norm(slice(d, hf, Leg::First, n, n) - hv(i) * id));
  }

  // convolution against sampled functionals; phi restricted to A through its density
  const Mat ws = m.W.adjoint();
  for (int s = 0; s < samples; ++s) {
    const Functional phi{random_matrix(rng, n, n) / static_cast<double>(n)};
    const Vec c = random_vector(rng, k).normalized();
    Mat x = Mat::Zero(n, n);
    for (int i = 0; i < k; ++i) x += c(i) * basis[i];
    const Vec ex = qz.eta(x);
    const Mat b = slice(m.W, phi, Leg::Second, n, n);
    const Mat conv = slice(comultiply(m, x), phi, Leg::Second, n, n);
    r.convolution_residual = std::max(r.convolution_residual, (qz.eta(conv) - b * ex).norm());
    const Mat conv2 = slice(ws * kron(x, id) * m.W, phi, Leg::Second, n, n);
    double alt;
    try {
      alt = (qz.eta(conv2) - b * ex).norm();
    } catch (const ValidationError&) {
      alt = std::numeric_limits<double>::infinity();
    }
    r.convolution_adjoint_residual = std::max(r.convolution_adjoint_residual, alt);
  }
  return r;
}

}  // namespace rieffel
