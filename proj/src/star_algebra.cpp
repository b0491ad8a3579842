#include "rieffel/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rieffel/errors.hpp"

namespace rieffel {

Vec MatrixAmbient::multiply(const Vec& x, const Vec& y) const { return coords(matrix(x) * matrix(y)); }

Vec MatrixAmbient::adjoint(const Vec& x) const { return coords(matrix(x).adjoint()); }

Vec MatrixAmbient::unit() const { return coords(Mat::Identity(n_, n_)); }

Vec MatrixAmbient::coords(const Mat& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw StructuralError("matrix size does not match ambient");
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat MatrixAmbient::matrix(const Vec& x) const {
  if (x.size() != n_ * n_) throw StructuralError("coordinate length does not match ambient");
  return Eigen::Map<const Mat>(x.data(), n_, n_);
}

// ---------------------------------------------------------------------------

StarAlgebra::StarAlgebra(AmbientPtr ambient, Mat basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (!ambient_) throw StructuralError("algebra without ambient");
  if (basis_.rows() != ambient_->coord_dim()) throw StructuralError("basis length does not match ambient");
}

StarAlgebra StarAlgebra::from_span(AmbientPtr ambient, const Mat& columns, double rel_tol) {
  const int d = ambient->coord_dim();
  return StarAlgebra(ambient, columns.cols() ? orthonormal_span(columns, rel_tol) : Mat(d, 0));
}

StarAlgebra StarAlgebra::zero(AmbientPtr ambient) {
  const int d = ambient->coord_dim();
  return StarAlgebra(std::move(ambient), Mat(d, 0));
}

double StarAlgebra::residual(const Vec& x) const {
  if (dim() == 0) return x.norm();
  return (x - basis_ * (basis_.adjoint() * x)).norm();
}

namespace {

template <class F>
void for_pairs(int k, std::uint64_t seed, int samples, F&& f) {
  if (k <= 64) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) f(i, j);
    return;
  }
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int s = 0; s < samples; ++s) f(pick(rng), pick(rng));
}

}  // namespace

StarAlgebra::Closure StarAlgebra::closure_residual(std::uint64_t seed, int samples) const {
  Closure c;
  for (int i = 0; i < dim(); ++i) c.star = std::max(c.star, residual(ambient_->adjoint(element(i))));
  for_pairs(dim(), seed, samples, [&](int i, int j) {
    c.product = std::max(c.product, residual(ambient_->multiply(element(i), element(j))));
  });
  return c;
}

double StarAlgebra::commutator_norm(std::uint64_t seed, int samples) const {
  double worst = 0.0;
  for_pairs(dim(), seed, samples, [&](int i, int j) {
    const Vec c = ambient_->multiply(element(i), element(j)) - ambient_->multiply(element(j), element(i));
    worst = std::max(worst, c.norm());
  });
  return worst;
}

bool StarAlgebra::contains_unit(double tol) const {
  const Vec u = ambient_->unit();
  return residual(u) <= tol * u.norm();
}

// ---------------------------------------------------------------------------

StarAlgebra generate_algebra(const AmbientPtr& ambient, const std::vector<Vec>& generators, bool unital,
                             double rel_tol, int max_dim) {
  const int d = ambient->coord_dim();
  if (max_dim < 0) max_dim = d;
  std::vector<Vec> gens;
  for (const auto& g : generators) {
    if (g.size() != d) throw StructuralError("generator does not live in the ambient");
    gens.push_back(g);
    gens.push_back(ambient->adjoint(g));
  }
  SpanBuilder span(d, rel_tol);
  std::vector<Vec> frontier;
  auto push = [&](const Vec& v) {
    if (span.add(v)) {
      frontier.push_back(span.column(span.dim() - 1));
      if (span.dim() > max_dim) throw NumericalError("algebra generation exceeded the dimension cap");
    }
  };
  if (unital) push(ambient->unit());
  for (const auto& g : gens) push(g);
  // words are closed under left multiplication by generators; orthonormalized
  // frontier vectors span the same space as the words they came from
  while (!frontier.empty()) {
    std::vector<Vec> current;
    current.swap(frontier);
    for (const auto& v : current)
      for (const auto& g : gens) push(ambient->multiply(g, v));
  }
  return StarAlgebra(ambient, span.basis());
}

StarAlgebra fixed_point_algebra(const StarAlgebra& a, const std::vector<CoordMap>& group, double tol) {
  if (group.empty()) throw ValidationError("empty action");
  const int k = a.dim();
  // invariance of A under each map, tested on two random elements of A: a
  // linear map moving A off itself does so for almost every element
  Rng rng(0x5eed);
  for (int probe = 0; probe < 2 && k > 0; ++probe) {
    const Vec x = a.basis() * random_vector(rng, k);
    for (const auto& alpha : group) {
      const Vec ax = alpha(x);
      if (a.residual(ax) > tol * std::max(1.0, ax.norm()))
        throw ValidationError("automorphism does not preserve the algebra");
    }
  }
  Mat avg(a.ambient()->coord_dim(), k);
  for (int i = 0; i < k; ++i) {
    const Vec b = a.element(i);
    Vec s = Vec::Zero(b.size());
    for (const auto& alpha : group) s += alpha(b);
    avg.col(i) = s / static_cast<double>(group.size());
  }
  return StarAlgebra::from_span(a.ambient(), avg);
}

StarAlgebra fixed_point_nullspace(const StarAlgebra& a, const std::vector<CoordMap>& generators) {
  const int k = a.dim();
  const int d = a.ambient()->coord_dim();
  if (generators.empty()) return a;
  Mat m(d * static_cast<int>(generators.size()), k);
  for (int i = 0; i < k; ++i) {
    const Vec b = a.element(i);
    for (std::size_t g = 0; g < generators.size(); ++g) m.block(g * d, i, d, 1) = generators[g](b) - b;
  }
  const Mat ker = null_space(m);
  return StarAlgebra::from_span(a.ambient(), a.basis() * ker);
}

StarAlgebra center(const StarAlgebra& a, std::uint64_t seed) {
  const int k = a.dim();
  const int d = a.ambient()->coord_dim();
  if (k == 0) return a;
  Rng rng(seed);
  // the commutant of two generic elements of a semisimple algebra is its
  // center; a third one guards against unlucky draws
  const int probes = std::min(3, k);
  Mat m(d * probes, k);
  for (int p = 0; p < probes; ++p) {
    const Vec r = a.basis() * random_vector(rng, k);
    for (int i = 0; i < k; ++i) {
      const Vec b = a.element(i);
      m.block(p * d, i, d, 1) = a.ambient()->multiply(b, r) - a.ambient()->multiply(r, b);
    }
  }
  const Mat ker = null_space(m);
  return StarAlgebra::from_span(a.ambient(), a.basis() * ker);
}

BlockDecomposition block_decomposition(const StarAlgebra& a, std::uint64_t seed, double cluster_tol) {
  BlockDecomposition out;
  const int k = a.dim();
  if (k == 0) return out;
  const auto& amb = *a.ambient();
  const StarAlgebra z = center(a, seed);
  out.center_dim = z.dim();

  Rng rng(seed + 1);
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec h = Vec::Zero(amb.coord_dim());
  for (int j = 0; j < z.dim(); ++j) {
    const Vec c = z.element(j);
    const Vec cs = amb.adjoint(c);
    h += nd(rng) * (c + cs) / 2.0 + nd(rng) * (c - cs) / cplx(0.0, 2.0);
  }
  h /= std::max(h.norm(), 1e-300);

  // left multiplication by h restricted to A, in the orthonormal basis
  Mat lz(k, k);
  for (int j = 0; j < k; ++j) lz.col(j) = a.basis().adjoint() * amb.multiply(h, a.element(j));
  Eigen::SelfAdjointEigenSolver<Mat> es((lz + lz.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const RVec ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);

  std::vector<int> mult;
  double min_gap = 1.0;
  int run = 1;
  for (int i = 1; i <= k; ++i) {
    if (i < k) {
      const double gap = (ev(i) - ev(i - 1)) / scale;
      if (gap <= cluster_tol) {
        ++run;
        continue;
      }
      min_gap = std::min(min_gap, gap);
    }
    mult.push_back(run);
    run = 1;
  }
  out.min_gap = min_gap;
  if (static_cast<int>(mult.size()) != z.dim()) {
    std::ostringstream os;
    os << "block decomposition: " << mult.size() << " eigenvalue clusters but center has dimension " << z.dim()
       << " (smallest cluster gap " << min_gap << ")";
    throw NumericalError(os.str());
  }
  for (int m : mult) {
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (s * s != m) {
      std::ostringstream os;
      os << "block decomposition: cluster multiplicity " << m << " is not a square (smallest cluster gap "
         << min_gap << ")";
      throw NumericalError(os.str());
    }
    out.sizes.push_back(s);
  }
  std::sort(out.sizes.begin(), out.sizes.end());
  return out;
}

// ---------------------------------------------------------------------------

Mat slice(const Mat& w, const Functional& omega, Leg leg, int n1, int n2) {
  if (w.rows() != n1 * n2 || w.cols() != n1 * n2) throw StructuralError("slice: operator does not match leg sizes");
  const Mat& d = omega.density;
  if (leg == Leg::First) {
    if (d.rows() != n1 || d.cols() != n1) throw StructuralError("slice: functional lives on the wrong leg");
    Mat out = Mat::Zero(n2, n2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j)
        if (d(j, i) != cplx(0.0, 0.0)) out += d(j, i) * w.block(i * n2, j * n2, n2, n2);
    return out;
  }
  if (d.rows() != n2 || d.cols() != n2) throw StructuralError("slice: functional lives on the wrong leg");
  Mat out(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) out(i, j) = (d.transpose().cwiseProduct(w.block(i * n2, j * n2, n2, n2))).sum();
  return out;
}

Mat average(const std::vector<Mat>& family) {
  if (family.empty()) throw ValidationError("average of an empty family");
  Mat s = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) s += family[i];
  return s / static_cast<double>(family.size());
}

std::string format_blocks(const std::vector<int>& sizes) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
  os << "]";
  return os.str();
}

}  // namespace rieffel
