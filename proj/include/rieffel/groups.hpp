#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rieffel/phase.hpp"

namespace rieffel {

using Vec = Eigen::VectorXcd;

/// Finite abelian group Z_{n_1} x ... x Z_{n_k}. Elements are addressed by a
/// mixed-radix index with the first factor most significant.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<int>{}) {}
  explicit FiniteAbelianGroup(std::vector<int> factors);

  static FiniteAbelianGroup cyclic(int n) { return FiniteAbelianGroup({n}); }

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int order() const { return order_; }

  std::vector<int> coords(int index) const;
  int index(const std::vector<int>& coords) const;

  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int zero() const { return 0; }
  /// Index of the i-th standard generator e_i.
  int generator(int i) const;

  /// The Pontryagin dual, identified with a group on the same factor list.
  FiniteAbelianGroup dual() const { return *this; }

  /// <chi, g> = exp(2 pi i sum chi_i g_i / n_i), chi read as a dual element.
  Phase pairing(int chi, int g) const;
  Eigen::MatrixXcd pairing_matrix() const;

  /// (F h)(chi) = sum_g h(g) <chi, g>.
  Vec fourier(const Vec& h) const;
  /// (F^-1 f)(g) = |G|^-1 sum_chi f(chi) conj<chi, g>.
  Vec inverse_fourier(const Vec& f) const;

  FiniteAbelianGroup product(const FiniteAbelianGroup& other) const;
  /// Index in this x other of the pair (a, b).
  int pair_index(const FiniteAbelianGroup& other, int a, int b) const {
    return a * other.order() + b;
  }

  std::string describe() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<int> factors_;
  std::vector<int> strides_;
  int order_ = 1;
  std::int64_t lcm_ = 1;
};

using DualGroup = FiniteAbelianGroup;

/// Homomorphism between finite abelian groups, stored as an index map.
class AbelianHom {
 public:
  AbelianHom(FiniteAbelianGroup src, FiniteAbelianGroup dst, std::vector<int> images);

  /// Build from the images of the standard generators; validates well-definedness.
  static AbelianHom from_generators(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst,
                                    const std::vector<int>& generator_images);
  static AbelianHom identity(const FiniteAbelianGroup& g);
  static AbelianHom trivial(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst);

  const FiniteAbelianGroup& source() const { return src_; }
  const FiniteAbelianGroup& target() const { return dst_; }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  /// this o other
  AbelianHom compose(const AbelianHom& other) const;

 private:
  FiniteAbelianGroup src_, dst_;
  std::vector<int> images_;
};

/// phi^T : dual(target) -> dual(source), <phi^T(chi'), g> = <chi', phi(g)>.
AbelianHom dual_hom(const AbelianHom& phi);

/// Finite group given by a Cayley table. Labels are cosmetic.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<int>> cayley, std::vector<std::string> labels = {});

  static FiniteGroup cyclic(int n);
  static FiniteGroup from_abelian(const FiniteAbelianGroup& g);
  /// Dihedral group of order 2n; element r^a s^e has index a + n*e.
  static FiniteGroup dihedral(int n);
  /// Quaternion group {+-1, +-i, +-j, +-k}.
  static FiniteGroup quaternion();
  /// Upper unitriangular 3x3 matrices over Z_p; (a,b,c) has index (a*p + b)*p + c.
  static FiniteGroup heisenberg(int p);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return n_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return table_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<std::vector<int>> cayley() const;
  bool is_abelian() const;

 private:
  int n_ = 0;
  int e_ = 0;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

/// Injective homomorphism iota : Gamma -> G with Gamma abelian.
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(FiniteAbelianGroup gamma, const FiniteGroup& g, std::vector<int> images);

  /// Images of the standard generators of Gamma; the rest follows.
  static SubgroupEmbedding from_generators(const FiniteAbelianGroup& gamma, const FiniteGroup& g,
                                           const std::vector<int>& generator_images);

  const FiniteAbelianGroup& gamma() const { return gamma_; }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

 private:
  FiniteAbelianGroup gamma_;
  std::vector<int> images_;
};

}  // namespace rieffel
