#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rieffel/linalg.hpp"

namespace rieffel {

/// Linear operator on C^d, either dense or a lazy expression tree. Large
/// tensor-product identities are evaluated through apply() without ever
/// materializing the matrix.
class Operator {
 public:
  struct Node;

  Operator() = default;

  static Operator dense(Mat m);
  static Operator identity(int dim);
  static Operator diagonal(Vec d);
  /// e_j -> phase_j e_{perm[j]}; phases default to 1.
  static Operator permutation(std::vector<int> perm, std::vector<cplx> phases = {});
  static Operator kron(const Operator& a, const Operator& b);
  /// op acting on the listed legs (in order) of C^{dims[0]} (x) ... (row-major).
  static Operator on_legs(const Operator& op, std::vector<int> dims, std::vector<int> legs);
  static Operator product(std::vector<Operator> factors);  // factors[0] * factors[1] * ...
  static Operator sum(std::vector<Operator> terms);
  static Operator scaled(cplx c, const Operator& op);

  int dim() const;
  Vec apply(const Vec& v) const;
  Mat materialize() const;
  Operator adjoint() const;
  std::string kind() const;

  Operator operator*(const Operator& o) const { return product({*this, o}); }

 private:
  explicit Operator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// ||(A - B)|| estimated on seeded random probes, or exactly (spectral norm of
/// the difference) when dim < dense_limit.
double operator_distance(const Operator& a, const Operator& b, int probes, std::uint64_t seed,
                         int dense_limit);

}  // namespace rieffel
