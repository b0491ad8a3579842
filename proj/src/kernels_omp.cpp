#include <algorithm>

#include "rieffel/errors.hpp"
#include "rieffel/kernels.hpp"

#ifdef RIEFFEL_HAVE_OPENMP
#include <omp.h>
#endif

namespace rieffel::kernels {

void apply_two_leg_omp(const Mat& t, Legs legs, int n, const cplx* in, cplx* out) {
  const int n2 = n * n;
  if (t.rows() != n2 || t.cols() != n2) throw StructuralError("two-leg operator has wrong size");
  switch (legs) {
    case Legs::L12:
#pragma omp parallel for schedule(static)
      for (int ab = 0; ab < n2; ++ab)
        for (int k = 0; k < n; ++k) {
          cplx s = 0;
          for (int cd = 0; cd < n2; ++cd) s += t(ab, cd) * in[cd * n + k];
          out[ab * n + k] = s;
        }
      break;
    case Legs::L23:
#pragma omp parallel for collapse(2) schedule(static)
      for (int i = 0; i < n; ++i)
        for (int ab = 0; ab < n2; ++ab) {
          cplx s = 0;
          for (int cd = 0; cd < n2; ++cd) s += t(ab, cd) * in[i * n2 + cd];
          out[i * n2 + ab] = s;
        }
      break;
    case Legs::L13:
#pragma omp parallel for collapse(2) schedule(static)
      for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            cplx s = 0;
            for (int c = 0; c < n; ++c)
              for (int d = 0; d < n; ++d) s += t(a * n + b, c * n + d) * in[(c * n + j) * n + d];
            out[(a * n + j) * n + b] = s;
          }
      break;
  }
}

void crossed_multiply_omp(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out) {
  const int n = ct.n, nn = n * n, m = ct.order;
  std::vector<char> xz(m), yz(m);
  for (int g = 0; g < m; ++g) {
    xz[g] = std::all_of(x + g * nn, x + (g + 1) * nn, [](cplx v) { return v == cplx(0.0, 0.0); });
    yz[g] = std::all_of(y + g * nn, y + (g + 1) * nn, [](cplx v) { return v == cplx(0.0, 0.0); });
  }
  // inverse of the addition table: for target t and left index g, the right index h
  std::vector<int> right(static_cast<std::size_t>(m) * m);
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) right[ct.add[g * m + h] * m + g] = h;
  // each thread owns whole target blocks and sums over g in ascending order,
  // which is the order in which the serial kernel reaches that target
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < m; ++t) {
    Eigen::Map<Mat> o(out + t * nn, n, n);
    o.setZero();
    for (int g = 0; g < m; ++g) {
      const int h = right[t * m + g];
      if (xz[g] || yz[h]) continue;
      Eigen::Map<const Mat> xg(x + g * nn, n, n);
      Eigen::Map<const Mat> yh(y + h * nn, n, n);
      o.noalias() += xg * crossed_rho(ct, g, yh);
    }
  }
}

double probe_residual_omp(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed) {
  std::vector<double> r(probes, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < probes; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    const Vec v = random_vector(rng, dim);
    r[k] = (a(v) - b(v)).norm() / v.norm();
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, v);
  return worst;
}

}  // namespace rieffel::kernels
