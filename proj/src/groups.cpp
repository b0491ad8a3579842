#include "rieffel/groups.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "rieffel/errors.hpp"

namespace rieffel {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  strides_.assign(factors_.size(), 1);
  for (int i = rank() - 1; i >= 0; --i) {
    if (factors_[i] < 1) throw ValidationError("group factors must be >= 1");
    strides_[i] = order_;
    order_ *= factors_[i];
    lcm_ = std::lcm(lcm_, static_cast<std::int64_t>(factors_[i]));
  }
}

std::vector<int> FiniteAbelianGroup::coords(int index) const {
  std::vector<int> c(factors_.size());
  for (int i = 0; i < rank(); ++i) c[i] = (index / strides_[i]) % factors_[i];
  return c;
}

int FiniteAbelianGroup::index(const std::vector<int>& c) const {
  if (c.size() != factors_.size()) throw StructuralError("coordinate length does not match group rank");
  int idx = 0;
  for (int i = 0; i < rank(); ++i) {
    int v = c[i] % factors_[i];
    if (v < 0) v += factors_[i];
    idx += v * strides_[i];
  }
  return idx;
}

int FiniteAbelianGroup::add(int a, int b) const {
  int idx = 0;
  for (int i = 0; i < rank(); ++i) {
    const int ai = (a / strides_[i]) % factors_[i];
    const int bi = (b / strides_[i]) % factors_[i];
    idx += ((ai + bi) % factors_[i]) * strides_[i];
  }
  return idx;
}

int FiniteAbelianGroup::neg(int a) const {
  int idx = 0;
  for (int i = 0; i < rank(); ++i) {
    const int ai = (a / strides_[i]) % factors_[i];
    idx += ((factors_[i] - ai) % factors_[i]) * strides_[i];
  }
  return idx;
}

int FiniteAbelianGroup::generator(int i) const {
  if (i < 0 || i >= rank()) throw StructuralError("generator index out of range");
  return factors_[i] == 1 ? 0 : strides_[i];
}

Phase FiniteAbelianGroup::pairing(int chi, int g) const {
  if (chi < 0 || chi >= order_ || g < 0 || g >= order_)
    throw StructuralError("pairing argument outside the group");
  std::int64_t num = 0;
  for (int i = 0; i < rank(); ++i) {
    const std::int64_t ci = (chi / strides_[i]) % factors_[i];
    const std::int64_t gi = (g / strides_[i]) % factors_[i];
    num += ci * gi % factors_[i] * (lcm_ / factors_[i]);
  }
  return Phase(num, lcm_);
}

Eigen::MatrixXcd FiniteAbelianGroup::pairing_matrix() const {
  Eigen::MatrixXcd m(order_, order_);
  for (int chi = 0; chi < order_; ++chi)
    for (int g = 0; g < order_; ++g) m(chi, g) = pairing(chi, g).value();
  return m;
}

Vec FiniteAbelianGroup::fourier(const Vec& h) const {
  if (h.size() != order_) throw StructuralError("function length does not match group order");
  return pairing_matrix() * h;
}

Vec FiniteAbelianGroup::inverse_fourier(const Vec& f) const {
  if (f.size() != order_) throw StructuralError("function length does not match group order");
  return pairing_matrix().adjoint() * f / static_cast<double>(order_);
}

FiniteAbelianGroup FiniteAbelianGroup::product(const FiniteAbelianGroup& other) const {
  std::vector<int> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return FiniteAbelianGroup(f);
}

std::string FiniteAbelianGroup::describe() const {
  if (factors_.empty()) return "trivial";
  std::ostringstream os;
  for (int i = 0; i < rank(); ++i) os << (i ? "x" : "") << "Z" << factors_[i];
  return os.str();
}

// ---------------------------------------------------------------------------

AbelianHom::AbelianHom(FiniteAbelianGroup src, FiniteAbelianGroup dst, std::vector<int> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_.order())
    throw StructuralError("homomorphism image table has wrong length");
  for (int v : images_)
    if (v < 0 || v >= dst_.order()) throw StructuralError("homomorphism image outside target");
  for (int a = 0; a < src_.order(); ++a)
    for (int b = 0; b < src_.order(); ++b)
      if (images_[src_.add(a, b)] != dst_.add(images_[a], images_[b]))
        throw ValidationError("map is not a homomorphism at (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
}

AbelianHom AbelianHom::from_generators(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst,
                                       const std::vector<int>& gen_images) {
  if (static_cast<int>(gen_images.size()) != src.rank())
    throw StructuralError("need one image per generator");
  std::vector<int> img(src.order());
  for (int x = 0; x < src.order(); ++x) {
    const auto c = src.coords(x);
    int y = dst.zero();
    for (int i = 0; i < src.rank(); ++i)
      for (int k = 0; k < c[i]; ++k) y = dst.add(y, gen_images[i]);
    img[x] = y;
  }
  return AbelianHom(src, dst, img);
}

AbelianHom AbelianHom::identity(const FiniteAbelianGroup& g) {
  std::vector<int> img(g.order());
  std::iota(img.begin(), img.end(), 0);
  return AbelianHom(g, g, img);
}

AbelianHom AbelianHom::trivial(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst) {
  return AbelianHom(src, dst, std::vector<int>(src.order(), 0));
}

AbelianHom AbelianHom::compose(const AbelianHom& other) const {
  if (!(other.dst_ == src_)) throw StructuralError("cannot compose: group mismatch");
  std::vector<int> img(other.src_.order());
  for (int x = 0; x < other.src_.order(); ++x) img[x] = images_[other.images_[x]];
  return AbelianHom(other.src_, dst_, img);
}

AbelianHom dual_hom(const AbelianHom& phi) {
  const auto& src = phi.source();
  const auto& dst = phi.target();
  std::vector<int> img(dst.order());
  for (int chi = 0; chi < dst.order(); ++chi) {
    // chi o phi evaluated on e_i fixes the i-th coordinate of the pulled-back character
    std::vector<int> c(src.rank());
    for (int i = 0; i < src.rank(); ++i) {
      const Phase p = dst.pairing(chi, phi(src.generator(i)));
      const int n = src.factors()[i];
      if (n % p.den() != 0) throw ValidationError("pulled-back character is not well defined");
      c[i] = static_cast<int>(p.num() * (n / p.den()));
    }
    img[chi] = src.index(c);
    for (int g = 0; g < src.order(); ++g)
      if (!(src.pairing(img[chi], g) == dst.pairing(chi, phi(g))))
        throw ValidationError("dual map fails the pairing identity");
  }
  return AbelianHom(dst.dual(), src.dual(), img);
}

// ---------------------------------------------------------------------------

namespace {

void check_group_axioms(int n, const std::vector<int>& t, int& e, std::vector<int>& inv) {
  e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t[a * n + x] == x && t[x * n + a] == x;
    if (ok) e = a;
  }
  if (e < 0) throw ValidationError("Cayley table has no identity");
  inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (t[a * n + b] == e && t[b * n + a] == e) inv[a] = b;
    if (inv[a] < 0) throw ValidationError("element " + std::to_string(a) + " has no inverse");
  }
  auto assoc = [&](int a, int b, int c) {
    if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
      throw ValidationError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                            "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 1000; ++k) assoc(pick(rng), pick(rng), pick(rng));
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley, std::vector<std::string> labels)
    : n_(static_cast<int>(cayley.size())), labels_(std::move(labels)) {
  if (n_ == 0) throw ValidationError("empty group");
  table_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& row : cayley) {
    if (static_cast<int>(row.size()) != n_) throw StructuralError("Cayley table is not square");
    for (int v : row) {
      if (v < 0 || v >= n_) throw ValidationError("Cayley table entry out of range");
      table_.push_back(v);
    }
  }
  // latin square property: every row and column a permutation
  for (int a = 0; a < n_; ++a) {
    std::vector<char> row(n_, 0), col(n_, 0);
    for (int b = 0; b < n_; ++b) {
      row[table_[a * n_ + b]] = 1;
      col[table_[b * n_ + a]] = 1;
    }
    for (int b = 0; b < n_; ++b)
      if (!row[b] || !col[b]) throw ValidationError("Cayley table is not a latin square");
  }
  check_group_axioms(n_, table_, e_, inv_);
  if (labels_.empty()) {
    for (int a = 0; a < n_; ++a) labels_.push_back(std::to_string(a));
  } else if (static_cast<int>(labels_.size()) != n_) {
    throw StructuralError("label count does not match group order");
  }
}

std::vector<std::vector<int>> FiniteGroup::cayley() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) out[a][b] = table_[a * n_ + b];
  return out;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::cyclic(int n) { return from_abelian(FiniteAbelianGroup::cyclic(n)); }

FiniteGroup FiniteGroup::from_abelian(const FiniteAbelianGroup& g) {
  std::vector<std::vector<int>> t(g.order(), std::vector<int>(g.order()));
  std::vector<std::string> labels;
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) t[a][b] = g.add(a, b);
    std::string s = "(";
    const auto c = g.coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    labels.push_back(s + ")");
  }
  return FiniteGroup(t, labels);
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw ValidationError("dihedral order must be positive");
  const int order = 2 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  // r^a s^e * r^b s^f = r^{a + (-1)^e b} s^{e+f}
  for (int x = 0; x < order; ++x) {
    const int a = x % n, e = x / n;
    labels[x] = (a ? "r" + (a > 1 ? std::to_string(a) : std::string()) : std::string()) + (e ? "s" : "");
    if (labels[x].empty()) labels[x] = "e";
    for (int y = 0; y < order; ++y) {
      const int b = y % n, f = y / n;
      const int r = ((a + (e ? -b : b)) % n + n) % n;
      t[x][y] = r + n * ((e + f) % 2);
    }
  }
  return FiniteGroup(t, labels);
}

FiniteGroup FiniteGroup::quaternion() {
  // units 1,i,j,k with sign: index = unit + 4*sign
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = std::string(x >= 4 ? "-" : "") + names[x % 4];
    for (int y = 0; y < 8; ++y) {
      const int u = unit_mul[x % 4][y % 4];
      const int s = (x / 4 + y / 4 + sign_mul[x % 4][y % 4]) % 2;
      t[x][y] = u + 4 * s;
    }
  }
  return FiniteGroup(t, labels);
}

FiniteGroup FiniteGroup::heisenberg(int p) {
  if (p < 2) throw ValidationError("Heisenberg group needs p >= 2");
  const int order = p * p * p;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x / (p * p), b = (x / p) % p, c = x % p;
    labels[x] = "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
    for (int y = 0; y < order; ++y) {
      const int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      t[x][y] = (((a + a2) % p) * p + (b + b2) % p) * p + (c + c2 + a * b2) % p;
    }
  }
  return FiniteGroup(t, labels);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int order = g.order() * h.order();
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    labels[x] = "(" + g.label(x / h.order()) + "," + h.label(x % h.order()) + ")";
    for (int y = 0; y < order; ++y)
      t[x][y] = g.mul(x / h.order(), y / h.order()) * h.order() + h.mul(x % h.order(), y % h.order());
  }
  return FiniteGroup(t, labels);
}

// ---------------------------------------------------------------------------

SubgroupEmbedding::SubgroupEmbedding(FiniteAbelianGroup gamma, const FiniteGroup& g,
                                     std::vector<int> images)
    : gamma_(std::move(gamma)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != gamma_.order())
    throw StructuralError("embedding table has wrong length");
  std::vector<char> seen(g.order(), 0);
  for (int v : images_) {
    if (v < 0 || v >= g.order()) throw StructuralError("embedding image outside G");
    if (seen[v]) throw ValidationError("embedding is not injective");
    seen[v] = 1;
  }
  if (images_[gamma_.zero()] != g.identity()) throw ValidationError("embedding does not fix the identity");
  for (int a = 0; a < gamma_.order(); ++a)
    for (int b = 0; b < gamma_.order(); ++b)
      if (images_[gamma_.add(a, b)] != g.mul(images_[a], images_[b]))
        throw ValidationError("embedding is not a homomorphism");
}

SubgroupEmbedding SubgroupEmbedding::from_generators(const FiniteAbelianGroup& gamma, const FiniteGroup& g,
                                                     const std::vector<int>& gen_images) {
  if (static_cast<int>(gen_images.size()) != gamma.rank())
    throw StructuralError("need one image per generator");
  std::vector<int> img(gamma.order());
  for (int x = 0; x < gamma.order(); ++x) {
    const auto c = gamma.coords(x);
    int y = g.identity();
    for (int i = 0; i < gamma.rank(); ++i)
      for (int k = 0; k < c[i]; ++k) y = g.mul(y, gen_images[i]);
    img[x] = y;
  }
  return SubgroupEmbedding(gamma, g, img);
}

}  // namespace rieffel
