#include <atomic>

#include "rieffel/errors.hpp"
#include "rieffel/kernels.hpp"

namespace rieffel::kernels {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel && openmp_available(); }

bool openmp_available() {
#ifdef RIEFFEL_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

void apply_two_leg_serial(const Mat& t, Legs legs, int n, const cplx* in, cplx* out) {
  const int n2 = n * n;
  if (t.rows() != n2 || t.cols() != n2) throw StructuralError("two-leg operator has wrong size");
  switch (legs) {
    case Legs::L12:
      for (int ab = 0; ab < n2; ++ab)
        for (int k = 0; k < n; ++k) {
          cplx s = 0;
          for (int cd = 0; cd < n2; ++cd) s += t(ab, cd) * in[cd * n + k];
          out[ab * n + k] = s;
        }
      break;
    case Legs::L23:
      for (int i = 0; i < n; ++i)
        for (int ab = 0; ab < n2; ++ab) {
          cplx s = 0;
          for (int cd = 0; cd < n2; ++cd) s += t(ab, cd) * in[i * n2 + cd];
          out[i * n2 + ab] = s;
        }
      break;
    case Legs::L13:
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

Mat crossed_rho(const CrossedTable& ct, int g, const Mat& b) {
  if (!ct.permutation) return ct.unitary[g] * b * ct.unitary[g].adjoint();
  const auto& p = ct.perm[g];
  const auto& ph = ct.perm_phase[g];
  Mat r(ct.n, ct.n);
  // (u b u^*)(p_i, p_j) = ph_i b(i, j) conj(ph_j)
  for (int j = 0; j < ct.n; ++j)
    for (int i = 0; i < ct.n; ++i) r(p[i], p[j]) = ph[i] * b(i, j) * std::conj(ph[j]);
  return r;
}

namespace {

bool block_is_zero(const cplx* blk, int nn) {
  for (int i = 0; i < nn; ++i)
    if (blk[i] != cplx(0.0, 0.0)) return false;
  return true;
}

}  // namespace

void crossed_multiply_serial(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out) {
  const int n = ct.n, nn = n * n, m = ct.order;
  std::vector<char> xz(m), yz(m);
  for (int g = 0; g < m; ++g) {
    xz[g] = block_is_zero(x + g * nn, nn);
    yz[g] = block_is_zero(y + g * nn, nn);
  }
  std::fill(out, out + static_cast<std::ptrdiff_t>(m) * nn, cplx(0.0, 0.0));
  for (int g = 0; g < m; ++g) {
    if (xz[g]) continue;
    Eigen::Map<const Mat> xg(x + g * nn, n, n);
    for (int h = 0; h < m; ++h) {
      if (yz[h]) continue;
      Eigen::Map<const Mat> yh(y + h * nn, n, n);
      Eigen::Map<Mat> o(out + ct.add[g * m + h] * nn, n, n);
      o.noalias() += xg * crossed_rho(ct, g, yh);
    }
  }
}

double probe_residual_serial(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    const Vec v = random_vector(rng, dim);
    worst = std::max(worst, (a(v) - b(v)).norm() / v.norm());
  }
  return worst;
}

void apply_two_leg(const Mat& t, Legs legs, int n, const cplx* in, cplx* out) {
  if (parallel_enabled())
    apply_two_leg_omp(t, legs, n, in, out);
  else
    apply_two_leg_serial(t, legs, n, in, out);
}

void crossed_multiply(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out) {
  if (parallel_enabled() && ct.order > 1)
    crossed_multiply_omp(ct, x, y, out);
  else
    crossed_multiply_serial(ct, x, y, out);
}

double probe_residual(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed) {
  return parallel_enabled() ? probe_residual_omp(a, b, dim, probes, seed)
                            : probe_residual_serial(a, b, dim, probes, seed);
}

}  // namespace rieffel::kernels
