#include <gtest/gtest.h>

#include "rieffel/errors.hpp"
#include "rieffel/qgroup.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace testing_support;

namespace {

GroupQuantumData abelian_data(const FiniteAbelianGroup& g, const TwoCocycle& psi) {
  const auto gg = FiniteGroup::from_abelian(g);
  std::vector<int> id(g.order());
  for (int x = 0; x < g.order(); ++x) id[x] = x;
  return GroupQuantumData(gg, SubgroupEmbedding(g, gg, id), psi);
}

const FiniteAbelianGroup kKlein({2, 2});

GroupQuantumData dihedral_data(int n, const TwoCocycle& psi) {
  const auto d = FiniteGroup::dihedral(n);
  return GroupQuantumData(d, SubgroupEmbedding::from_generators(kKlein, d, {n / 2, n}), psi);
}

TwoCocycle kp() { return TwoCocycle::bicharacter(kKlein, {{0, 0}, {1, 0}}, 2); }

ProbeSettings dense() { return ProbeSettings{16, 0, 1 << 20}; }

}  // namespace

TEST(KacTakesaki, Z2IsTheSwapOfOneAndThree) {
  // V delta_(a,b) = delta_(a b^-1, b): only (1,1) <-> (0,1) move
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(2, 2) = 1.0;
  expect(1, 3) = expect(3, 1) = 1.0;
  EXPECT_EQ(kac_takesaki(FiniteGroup::cyclic(2)), expect);
}

TEST(KacTakesaki, ImplementsTheGroupComultiplication) {
  for (const auto& g : {FiniteGroup::dihedral(3), FiniteGroup::quaternion(), FiniteGroup::cyclic(5)}) {
    const Mat v = kac_takesaki(g);
    EXPECT_LT(kac_takesaki_comultiplication_residual(g, v), 1e-13);
    EXPECT_LT(pentagon_residual(v, g.order(), dense()), 1e-13);
  }
}

TEST(MultiplicativeUnitary, JOnTheKleinGroup) {
  // u(x) = Psi(-x, x) is -1 only at x = (1,1), so J = 1 - 2 P^R_(1,1) with
  // (P^R_(1,1))_{y'y} = (-1)^{parity(y - y')} / 4
  const auto q = abelian_data(kKlein, kp());
  const auto m = build_W(q);
  Mat expect(4, 4);
  for (int yp = 0; yp < 4; ++yp)
    for (int y = 0; y < 4; ++y) expect(yp, y) = (yp == y ? 1.0 : 0.0) - 0.5 * (__builtin_popcount(y ^ yp) % 2 ? -1.0 : 1.0);
  EXPECT_LT(max_abs(m.J - expect), 1e-15);
}

TEST(MultiplicativeUnitary, SpectralProjectionsPartitionTheIdentity) {
  const auto q = dihedral_data(4, kp());
  EXPECT_LT(q.projection_residual(), 1e-13);
  EXPECT_LT(q.commutation_residual(), 1e-13);
  // right and left regular representations
  const auto& g = q.group();
  for (int a = 0; a < g.order(); ++a)
    for (int y = 0; y < g.order(); ++y) {
      EXPECT_EQ(q.R(a)(g.mul(y, g.inv(a)), y), cplx(1.0));
      EXPECT_EQ(q.L(a)(g.mul(a, y), y), cplx(1.0));
    }
}

TEST(MultiplicativeUnitary, PentagonOnRandomCocycles) {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = random_group(rng);
    const auto q = abelian_data(g, random_cocycle(rng, g));
    const auto m = build_W(q);
    EXPECT_LT(m.unitarity_residual, 1e-12);
    EXPECT_LT(pentagon_residual(m.W, q.n(), dense()), 1e-11);
    EXPECT_LT(covariance_residual(q, m), 1e-12);
    EXPECT_LT(leg_residual(q, m), 1e-12);
  }
  for (int trial = 0; trial < 4; ++trial) {
    const auto q = dihedral_data(4, random_cocycle(rng, kKlein));
    const auto m = build_W(q);
    EXPECT_LT(pentagon_residual(m.W, q.n(), dense()), 1e-11);
    EXPECT_LT(covariance_residual(q, m), 1e-12);
  }
}

TEST(MultiplicativeUnitary, PentagonFailsForABrokenW) {
  const auto q = dihedral_data(4, kp());
  auto m = build_W(q);
  Mat w = m.W;
  w.row(0).swap(w.row(1));  // still unitary, no longer multiplicative
  EXPECT_GT(pentagon_residual(w, q.n(), dense()), 1e-3);
  const ProbeSettings probed{16, 3, 1};
  EXPECT_GT(pentagon_residual(w, q.n(), probed), 1e-3);
}

TEST(MultiplicativeUnitary, ProbedAndDensePentagonAgreeOnD8) {
  const auto q = dihedral_data(8, kp());
  const auto m = build_W(q);
  EXPECT_LT(pentagon_residual(m.W, q.n(), ProbeSettings{8, 1, 4096}), 1e-10);
}

TEST(Manageability, HoldsOnD4AndRandomAbelianCases) {
  std::mt19937_64 rng(61);
  const auto rep = manageability_check(build_W(dihedral_data(4, kp())));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.quadruples, 4096);
  EXPECT_LT(rep.inner_residual, 1e-12);
  EXPECT_LT(rep.adjoint_slice_residual, 1e-12);
  for (int trial = 0; trial < 4; ++trial) {
    const auto g = random_group(rng);
    const auto r = manageability_check(build_W(abelian_data(g, random_cocycle(rng, g))), 1e-9, 20, trial);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Slices, TrivialCocycleGivesFunctionsOnG) {
  const auto q = dihedral_data(4, TwoCocycle::trivial(kKlein));
  const auto m = build_W(q);
  const auto a = slice_algebra(m);
  EXPECT_EQ(a.dim(), 8);
  EXPECT_EQ(block_decomposition(a).sizes, std::vector<int>(8, 1));
  // the slices are the diagonal matrices
  auto amb = std::make_shared<MatrixAmbient>(8);
  Mat diag(64, 8);
  for (int i = 0; i < 8; ++i) {
    Mat e = Mat::Zero(8, 8);
    e(i, i) = 1.0;
    diag.col(i) = amb->coords(e);
  }
  EXPECT_LT(subspace_distance(a.basis(), diag), 1e-12);
  EXPECT_GT(flip_distance(m, a), 0.5);  // D4 is not abelian
}

TEST(Slices, MatchTheDeformedAlgebraOnRandomCocycles) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 3; ++trial) {
    const auto q = dihedral_data(4, random_cocycle(rng, kKlein));
    const auto m = build_W(q);
    const auto a = slice_algebra(m);
    const auto ts = left_right_deformation(q);
    EXPECT_EQ(a.dim(), 8);
    EXPECT_LT(subspace_distance(a.basis(), canonical_image(ts).basis()), 1e-10);
    EXPECT_LT(comultiplication_picture_residual(q, m, ts), 1e-10);
  }
}

TEST(Slices, KleinGroupDeformation) {
  const auto q = abelian_data(kKlein, kp());
  const auto m = build_W(q);
  const auto a = slice_algebra(m);
  EXPECT_EQ(a.dim(), 4);
  EXPECT_LT(flip_distance(m, a), 1e-12);
  EXPECT_LT(coassociativity_residual(m, a, dense()), 1e-12);
}

TEST(Comultiplication, CoassociativeAndInTheTensorSquare) {
  const auto q = dihedral_data(4, kp());
  const auto m = build_W(q);
  const auto a = slice_algebra(m);
  EXPECT_LT(coassociativity_residual(m, a, dense()), 1e-11);
  EXPECT_LT(coassociativity_residual(m, a, ProbeSettings{8, 5, 1}), 1e-11);
  const auto amb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  for (int i = 0; i < a.dim(); ++i) EXPECT_LT(tensor_residual(a, comultiply(m, amb->matrix(a.element(i)))), 1e-11);
  // a generic matrix is not in A, and neither is its image in A (x) A
  Rng rng(63);
  EXPECT_GT(tensor_residual(a, comultiply(m, random_matrix(rng, 8, 8))), 1e-3);
}

TEST(Corepresentation, HoldsOnD4) {
  const auto q = dihedral_data(4, kp());
  const auto m = build_W(q);
  const auto ts = left_right_deformation(q);
  const auto r = corepresentation_check(q, m, ts, ProbeSettings{});
  EXPECT_LT(r.canonical_residual, 1e-11);
  EXPECT_LT(r.invariance_residual, 1e-11);
  EXPECT_LT(r.corep_residual, 1e-8);
}

TEST(Dual, TrivialCocycleGivesTheGroupAlgebra) {
  for (int n : {4, 8}) {
    const auto q = dihedral_data(n, TwoCocycle::trivial(kKlein));
    const auto d = dual_quantum_group(q, build_W(q), ProbeSettings{});
    EXPECT_EQ(d.dim, 2 * n);
    // irreducible representations of D_n: four characters and n/2 - 1 planes
    std::vector<int> expect{1, 1, 1, 1};
    expect.insert(expect.end(), n / 2 - 1, 2);
    EXPECT_EQ(d.blocks, expect);
    EXPECT_LT(d.span_distance, 1e-12);
    EXPECT_LT(d.implementation_residual, 1e-12);
    EXPECT_LT(d.coassoc_residual, 1e-12);
    EXPECT_LT(std::max(d.antipode_residual, d.antipode_range_residual), 1e-12);
  }
}

TEST(Dual, AntipodeIsAntimultiplicativeAndInvolutive) {
  const auto q = dihedral_data(4, kp());
  const auto m = build_W(q);
  Rng rng(64);
  for (int trial = 0; trial < 5; ++trial) {
    Mat a = Mat::Zero(8, 8), b = Mat::Zero(8, 8);
    const Vec ca = random_vector(rng, 8), cb = random_vector(rng, 8);
    for (int g = 0; g < 8; ++g) {
      a += ca(g) * q.R(g);
      b += cb(g) * q.R(g);
    }
    const Mat ka = dual_antipode(q, m, a), kb = dual_antipode(q, m, b);
    EXPECT_LT((dual_antipode(q, m, a * b) - kb * ka).norm(), 1e-11);
    EXPECT_LT((dual_antipode(q, m, ka) - a).norm(), 1e-11);
  }
}

TEST(Quantization, EtaInvertsQ) {
  const auto q = dihedral_data(4, kp());
  const auto m = build_W(q);
  const Quantization qz(q, m);
  EXPECT_EQ(qz.rank(), 8);
  Rng rng(65);
  const Vec f = random_vector(rng, 8);
  EXPECT_LT((qz.eta(qz(f)) - f).norm(), 1e-11);
  EXPECT_LT((qz(f) - quantize(q, m, f)).norm(), 1e-12);
  EXPECT_THROW(qz.eta(random_matrix(rng, 8, 8)), ValidationError);
}

TEST(Haar, NormalizedFaithfulTracialAndInvariant) {
  std::mt19937_64 rng(66);
  for (const auto& psi : {kp(), TwoCocycle::trivial(kKlein), random_cocycle(rng, kKlein)}) {
    const auto q = dihedral_data(4, psi);
    const auto m = build_W(q);
    const auto h = haar_check(q, m, slice_algebra(m));
    EXPECT_EQ(h.q_rank, 8);
    EXPECT_LT(h.beauty_residual, 1e-11);
    EXPECT_LT(h.trace_residual, 1e-11);
    EXPECT_LT(h.left_invariance, 1e-11);
    EXPECT_LT(h.right_invariance, 1e-11);
    EXPECT_GT(h.min_gram_eigenvalue, 1e-3);
    EXPECT_LT(h.convolution_residual, 1e-11);
  }
}
