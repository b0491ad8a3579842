#pragma once

#include <functional>
#include <vector>

#include "rieffel/linalg.hpp"

// Hot loops of the engine. Each kernel has a plain serial reference and an
// OpenMP version with identical arithmetic order per output entry, so the two
// agree bit for bit; the dispatching entry points pick the parallel one when
// it is compiled in and enabled.

namespace rieffel::kernels {

enum class Legs { L12, L23, L13 };

/// out = T_{legs} in, where in/out live on C^n (x) C^n (x) C^n (row-major
/// multi-index (i*n + j)*n + k) and T acts on C^n (x) C^n.
void apply_two_leg_serial(const Mat& t, Legs legs, int n, const cplx* in, cplx* out);
void apply_two_leg_omp(const Mat& t, Legs legs, int n, const cplx* in, cplx* out);
void apply_two_leg(const Mat& t, Legs legs, int n, const cplx* in, cplx* out);

/// Group data for products in M_n x| Gamma: element x = sum_g pi(x_g) lambda_g is
/// stored as |Gamma| consecutive column-major n x n blocks.
struct CrossedTable {
  int n = 0;
  int order = 0;
  std::vector<int> add;  // order x order
  /// rho_g(b) = u_g b u_g^*; when permutation is true, u_g e_j = phase e_{perm[j]}
  /// with unit phases stored separately.
  bool permutation = false;
  std::vector<std::vector<int>> perm;
  std::vector<std::vector<cplx>> perm_phase;
  std::vector<Mat> unitary;
};

/// out_{g+h} += x_g rho_g(y_h); out is overwritten.
void crossed_multiply_serial(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out);
void crossed_multiply_omp(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out);
void crossed_multiply(const CrossedTable& ct, const cplx* x, const cplx* y, cplx* out);

/// rho_g(b) for a single block.
Mat crossed_rho(const CrossedTable& ct, int g, const Mat& b);

using LinearMap = std::function<Vec(const Vec&)>;

/// max_k ||(A - B) v_k|| / ||v_k|| over k Gaussian probes; probe k draws from
/// Rng(seed + k), so the result does not depend on the thread count.
double probe_residual_serial(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed);
double probe_residual_omp(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed);
double probe_residual(const LinearMap& a, const LinearMap& b, int dim, int probes, std::uint64_t seed);

/// Runtime switch for the dispatchers (no effect without OpenMP).
void set_parallel(bool on);
bool parallel_enabled();
bool openmp_available();

}  // namespace rieffel::kernels
