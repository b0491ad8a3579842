#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rieffel/linalg.hpp"

namespace rieffel {

/// A finite-dimensional *-algebra with a fixed coordinate system. The standard
/// inner product of coordinates must be a positive multiple of the
/// Hilbert-Schmidt inner product of the represented operators.
class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual int coord_dim() const = 0;
  virtual Vec multiply(const Vec& x, const Vec& y) const = 0;
  virtual Vec adjoint(const Vec& x) const = 0;
  virtual Vec unit() const = 0;
  virtual std::string describe() const = 0;
};

/// M_n with column-major coordinates.
class MatrixAmbient final : public Ambient {
 public:
  explicit MatrixAmbient(int n) : n_(n) {}
  int n() const { return n_; }
  int coord_dim() const override { return n_ * n_; }
  Vec multiply(const Vec& x, const Vec& y) const override;
  Vec adjoint(const Vec& x) const override;
  Vec unit() const override;
  std::string describe() const override { return "M_" + std::to_string(n_); }

  Vec coords(const Mat& m) const;
  Mat matrix(const Vec& x) const;

 private:
  int n_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;
using CoordMap = std::function<Vec(const Vec&)>;

/// Span of an orthonormal coordinate basis inside an ambient algebra.
class StarAlgebra {
 public:
  StarAlgebra() = default;
  StarAlgebra(AmbientPtr ambient, Mat orthonormal_basis);

  /// Orthonormalizes the given columns (they must already span an algebra for
  /// the result to be one; see closure_residual).
  static StarAlgebra from_span(AmbientPtr ambient, const Mat& columns, double rel_tol = kRankTol);
  static StarAlgebra zero(AmbientPtr ambient);

  const AmbientPtr& ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  Vec element(int i) const { return basis_.col(i); }

  /// Distance of x from the span.
  double residual(const Vec& x) const;
  /// Coefficients of the orthogonal projection of x onto the span.
  Vec coefficients(const Vec& x) const { return basis_.adjoint() * x; }

  struct Closure {
    double star = 0.0;
    double product = 0.0;
  };
  /// Largest span residual of adjoints and products; exhaustive over basis
  /// pairs up to dimension 64, otherwise over `samples` random pairs.
  Closure closure_residual(std::uint64_t seed = 0, int samples = 200) const;
  /// Largest norm of [b_i, b_j] (same sampling rule).
  double commutator_norm(std::uint64_t seed = 0, int samples = 200) const;
  bool contains_unit(double tol = 1e-9) const;

 private:
  AmbientPtr ambient_;
  Mat basis_;
};

/// Smallest *-closed, product-closed span containing the generators (and the
/// unit when requested). Frontier closure: every new basis vector is
/// multiplied on the left by every generator and adjoint.
StarAlgebra generate_algebra(const AmbientPtr& ambient, const std::vector<Vec>& generators, bool unital,
                             double rel_tol = kRankTol, int max_dim = -1);

/// Fixed points of a finite group of automorphisms (the whole group must be
/// listed): span of group averages of a basis. Throws ValidationError when a
/// map does not preserve A.
StarAlgebra fixed_point_algebra(const StarAlgebra& a, const std::vector<CoordMap>& group, double tol = 1e-8);

/// Same subspace computed as the common kernel of (alpha - id) over the given
/// generators of the action.
StarAlgebra fixed_point_nullspace(const StarAlgebra& a, const std::vector<CoordMap>& generators);

struct BlockDecomposition {
  std::vector<int> sizes;  // ascending
  int center_dim = 0;
  double min_gap = 0.0;    // smallest relative gap between eigenvalue clusters
};

/// Wedderburn block sizes from the spectrum of left multiplication by a
/// random self-adjoint central element.
BlockDecomposition block_decomposition(const StarAlgebra& a, std::uint64_t seed = 0, double cluster_tol = 1e-6);

/// Basis of the center of A.
StarAlgebra center(const StarAlgebra& a, std::uint64_t seed = 0);

/// A normal functional on B(C^n), omega(T) = tr(D T).
struct Functional {
  Mat density;
  /// omega_{x,y}(T) = (x|T|y) = x^* T y
  static Functional vector_state(const Vec& x, const Vec& y) { return {y * x.adjoint()}; }
  cplx operator()(const Mat& t) const { return (density * t).trace(); }
};

enum class Leg { First, Second };

/// (omega (x) id) W for leg First, (id (x) omega) W for leg Second; W acts on
/// C^{n1} (x) C^{n2} with row-major multi-index.
Mat slice(const Mat& w, const Functional& omega, Leg leg, int n1, int n2);

/// Arithmetic mean of a family.
Mat average(const std::vector<Mat>& family);

std::string format_blocks(const std::vector<int>& sizes);

}  // namespace rieffel
