#include "rieffel/operator.hpp"

#include <numeric>

#include "rieffel/errors.hpp"
#include "rieffel/kernels.hpp"

namespace rieffel {

struct Operator::Node {
  virtual ~Node() = default;
  virtual int dim() const = 0;
  virtual Vec apply(const Vec& v) const = 0;
  virtual Mat materialize() const {
    const int d = dim();
    Mat m(d, d);
    Vec e = Vec::Zero(d);
    for (int j = 0; j < d; ++j) {
      e(j) = 1.0;
      m.col(j) = apply(e);
      e(j) = 0.0;
    }
    return m;
  }
  virtual std::shared_ptr<const Node> adjoint(const std::shared_ptr<const Node>& self) const = 0;
  virtual std::string kind() const = 0;
};

namespace {

using NodePtr = std::shared_ptr<const Operator::Node>;

struct DenseNode final : Operator::Node {
  Mat m;
  explicit DenseNode(Mat mm) : m(std::move(mm)) {}
  int dim() const override { return static_cast<int>(m.rows()); }
  Vec apply(const Vec& v) const override { return m * v; }
  Mat materialize() const override { return m; }
  NodePtr adjoint(const NodePtr&) const override { return std::make_shared<DenseNode>(m.adjoint()); }
  std::string kind() const override { return "dense"; }
};

struct DiagonalNode final : Operator::Node {
  Vec d;
  explicit DiagonalNode(Vec dd) : d(std::move(dd)) {}
  int dim() const override { return static_cast<int>(d.size()); }
  Vec apply(const Vec& v) const override { return d.cwiseProduct(v); }
  Mat materialize() const override { return d.asDiagonal(); }
  NodePtr adjoint(const NodePtr&) const override { return std::make_shared<DiagonalNode>(d.conjugate()); }
  std::string kind() const override { return "diagonal"; }
};

struct PermutationNode final : Operator::Node {
  std::vector<int> p;
  std::vector<cplx> ph;
  PermutationNode(std::vector<int> pp, std::vector<cplx> phh) : p(std::move(pp)), ph(std::move(phh)) {}
  int dim() const override { return static_cast<int>(p.size()); }
  Vec apply(const Vec& v) const override {
    Vec out(v.size());
    for (std::size_t j = 0; j < p.size(); ++j) out(p[j]) = ph[j] * v(j);
    return out;
  }
  Mat materialize() const override {
    Mat m = Mat::Zero(dim(), dim());
    for (std::size_t j = 0; j < p.size(); ++j) m(p[j], j) = ph[j];
    return m;
  }
  NodePtr adjoint(const NodePtr&) const override {
    std::vector<int> q(p.size());
    std::vector<cplx> qh(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
      q[p[j]] = static_cast<int>(j);
      qh[p[j]] = std::conj(ph[j]);
    }
    return std::make_shared<PermutationNode>(q, qh);
  }
  std::string kind() const override { return "permutation"; }
};

struct OnLegsNode final : Operator::Node {
  NodePtr op;
  std::vector<int> dims, legs;
  int total = 1;
  std::vector<int> sub_offsets;   // offsets of the acted-on multi-index
  std::vector<int> base_offsets;  // offsets of the complementary multi-index
  bool fast3 = false;
  kernels::Legs fast_legs = kernels::Legs::L12;
  Mat fast_mat;

  OnLegsNode(NodePtr o, std::vector<int> d, std::vector<int> l) : op(std::move(o)), dims(std::move(d)), legs(std::move(l)) {
    const int k = static_cast<int>(dims.size());
    std::vector<int> stride(k, 1);
    for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
    total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
    std::vector<char> used(k, 0);
    int sub = 1;
    for (int l : legs) {
      if (l < 0 || l >= k || used[l]) throw StructuralError("invalid leg list");
      used[l] = 1;
      sub *= dims[l];
    }
    if (sub != op->dim()) throw StructuralError("operator dimension does not match the legs it acts on");
    auto enumerate = [&](const std::vector<int>& which) {
      std::vector<int> offs{0};
      for (int l : which) {
        std::vector<int> next;
        next.reserve(offs.size() * dims[l]);
        for (int o : offs)
          for (int i = 0; i < dims[l]; ++i) next.push_back(o + i * stride[l]);
        offs.swap(next);
      }
      return offs;
    };
    sub_offsets = enumerate(legs);
    std::vector<int> rest;
    for (int i = 0; i < k; ++i)
      if (!used[i]) rest.push_back(i);
    base_offsets = enumerate(rest);

    if (k == 3 && legs.size() == 2 && dims[0] == dims[1] && dims[1] == dims[2] && legs[0] < legs[1]) {
      fast3 = true;
      fast_legs = legs[0] == 0 ? (legs[1] == 1 ? kernels::Legs::L12 : kernels::Legs::L13) : kernels::Legs::L23;
      fast_mat = op->materialize();
    }
  }
  int dim() const override { return total; }
  Vec apply(const Vec& v) const override {
    if (v.size() != total) throw StructuralError("vector length does not match operator");
    Vec out(total);
    if (fast3) {
      kernels::apply_two_leg(fast_mat, fast_legs, dims[0], v.data(), out.data());
      return out;
    }
    Vec buf(sub_offsets.size());
    for (int b : base_offsets) {
      for (std::size_t s = 0; s < sub_offsets.size(); ++s) buf(s) = v(b + sub_offsets[s]);
      const Vec r = op->apply(buf);
      for (std::size_t s = 0; s < sub_offsets.size(); ++s) out(b + sub_offsets[s]) = r(s);
    }
    return out;
  }
  NodePtr adjoint(const NodePtr&) const override {
    return std::make_shared<OnLegsNode>(op->adjoint(op), dims, legs);
  }
  std::string kind() const override { return "on_legs(" + op->kind() + ")"; }
};

struct ProductNode final : Operator::Node {
  std::vector<NodePtr> f;
  explicit ProductNode(std::vector<NodePtr> ff) : f(std::move(ff)) {
    for (const auto& x : f)
      if (x->dim() != f.front()->dim()) throw StructuralError("product factors have different dimensions");
  }
  int dim() const override { return f.front()->dim(); }
  Vec apply(const Vec& v) const override {
    Vec r = v;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = (*it)->apply(r);
    return r;
  }
  Mat materialize() const override {
    Mat m = f.back()->materialize();
    for (auto it = f.rbegin() + 1; it != f.rend(); ++it) m = (*it)->materialize() * m;
    return m;
  }
  NodePtr adjoint(const NodePtr&) const override {
    std::vector<NodePtr> g;
    for (auto it = f.rbegin(); it != f.rend(); ++it) g.push_back((*it)->adjoint(*it));
    return std::make_shared<ProductNode>(g);
  }
  std::string kind() const override { return "product"; }
};

struct SumNode final : Operator::Node {
  std::vector<NodePtr> t;
  explicit SumNode(std::vector<NodePtr> tt) : t(std::move(tt)) {
    for (const auto& x : t)
      if (x->dim() != t.front()->dim()) throw StructuralError("sum terms have different dimensions");
  }
  int dim() const override { return t.front()->dim(); }
  Vec apply(const Vec& v) const override {
    Vec r = Vec::Zero(v.size());
    for (const auto& x : t) r += x->apply(v);
    return r;
  }
  Mat materialize() const override {
    Mat m = t.front()->materialize();
    for (std::size_t i = 1; i < t.size(); ++i) m += t[i]->materialize();
    return m;
  }
  NodePtr adjoint(const NodePtr&) const override {
    std::vector<NodePtr> g;
    for (const auto& x : t) g.push_back(x->adjoint(x));
    return std::make_shared<SumNode>(g);
  }
  std::string kind() const override { return "sum"; }
};

struct ScaledNode final : Operator::Node {
  cplx c;
  NodePtr op;
  ScaledNode(cplx cc, NodePtr o) : c(cc), op(std::move(o)) {}
  int dim() const override { return op->dim(); }
  Vec apply(const Vec& v) const override { return c * op->apply(v); }
  Mat materialize() const override { return c * op->materialize(); }
  NodePtr adjoint(const NodePtr&) const override { return std::make_shared<ScaledNode>(std::conj(c), op->adjoint(op)); }
  std::string kind() const override { return "scaled"; }
};

}  // namespace

Operator Operator::dense(Mat m) {
  if (m.rows() != m.cols()) throw StructuralError("operators must be square");
  return Operator(std::make_shared<DenseNode>(std::move(m)));
}

Operator Operator::identity(int d) { return Operator(std::make_shared<DiagonalNode>(Vec::Ones(d))); }

Operator Operator::diagonal(Vec d) { return Operator(std::make_shared<DiagonalNode>(std::move(d))); }

Operator Operator::permutation(std::vector<int> perm, std::vector<cplx> phases) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw ValidationError("not a permutation");
    seen[v] = 1;
  }
  if (phases.empty()) phases.assign(n, cplx(1.0, 0.0));
  if (static_cast<int>(phases.size()) != n) throw StructuralError("phase list has wrong length");
  return Operator(std::make_shared<PermutationNode>(std::move(perm), std::move(phases)));
}

Operator Operator::kron(const Operator& a, const Operator& b) {
  const std::vector<int> dims{a.dim(), b.dim()};
  return product({on_legs(a, dims, {0}), on_legs(b, dims, {1})});
}

Operator Operator::on_legs(const Operator& op, std::vector<int> dims, std::vector<int> legs) {
  return Operator(std::make_shared<OnLegsNode>(op.node_, std::move(dims), std::move(legs)));
}

Operator Operator::product(std::vector<Operator> factors) {
  if (factors.empty()) throw StructuralError("empty product");
  std::vector<NodePtr> f;
  for (auto& x : factors) f.push_back(x.node_);
  return Operator(std::make_shared<ProductNode>(std::move(f)));
}

Operator Operator::sum(std::vector<Operator> terms) {
  if (terms.empty()) throw StructuralError("empty sum");
  std::vector<NodePtr> t;
  for (auto& x : terms) t.push_back(x.node_);
  return Operator(std::make_shared<SumNode>(std::move(t)));
}

Operator Operator::scaled(cplx c, const Operator& op) { return Operator(std::make_shared<ScaledNode>(c, op.node_)); }

int Operator::dim() const { return node_ ? node_->dim() : 0; }

Vec Operator::apply(const Vec& v) const {
  if (v.size() != dim()) throw StructuralError("vector length does not match operator");
  return node_->apply(v);
}

Mat Operator::materialize() const { return node_->materialize(); }

Operator Operator::adjoint() const { return Operator(node_->adjoint(node_)); }

std::string Operator::kind() const { return node_ ? node_->kind() : "empty"; }

double operator_distance(const Operator& a, const Operator& b, int probes, std::uint64_t seed, int dense_limit) {
  if (a.dim() != b.dim()) throw StructuralError("operators act on different spaces");
  if (a.dim() < dense_limit) return spectral_norm(a.materialize() - b.materialize());
  return kernels::probe_residual([&](const Vec& v) { return a.apply(v); }, [&](const Vec& v) { return b.apply(v); },
                                 a.dim(), probes, seed);
}

}  // namespace rieffel
