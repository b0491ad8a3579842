#include <gtest/gtest.h>

#include "rieffel/deform.hpp"
#include "rieffel/errors.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace testing_support;

namespace {

// regular representation T_mu delta_nu = sigma(mu, nu) delta_{mu+nu}, built without the engine
std::vector<Mat> regular_twisted(const TwoCocycle& sigma) {
  const auto& g = sigma.group();
  std::vector<Mat> t;
  for (int mu = 0; mu < g.order(); ++mu) {
    Mat m = Mat::Zero(g.order(), g.order());
    for (int nu = 0; nu < g.order(); ++nu) m(g.add(mu, nu), nu) = root_of_unity(sigma(mu, nu).num(), sigma(mu, nu).den());
    t.push_back(m);
  }
  return t;
}

TwoCocycle kp(const FiniteAbelianGroup& g, long n) { return TwoCocycle::bicharacter(g, {{0, 0}, {1, 0}}, n); }

}  // namespace

TEST(Deform, DeformationDataChecksTheDualGroup) {
  EXPECT_THROW(DeformationData(translation_system(FiniteAbelianGroup({2, 2})), TwoCocycle::trivial(FiniteAbelianGroup({4}))),
               StructuralError);
}

TEST(Deform, NoncommutativeTorusBlocks) {
  // C(Z_n^2) deformed by exp(2 pi i x_2 y_1 / n) is M_n
  for (int n : {2, 3, 4}) {
    const FiniteAbelianGroup g({n, n});
    const auto ts = deform(DeformationData(translation_system(g), kp(g, n)));
    EXPECT_EQ(ts.a_psi.dim(), n * n);
    EXPECT_EQ(block_decomposition(ts.a_psi).sizes, std::vector<int>{n});
    EXPECT_LT(ts.invariance_residual(), 1e-10);
    const auto tga = twisted_group_algebra(kp(g, n));
    EXPECT_EQ(tga.blocks, std::vector<int>{n});
  }
}

TEST(Deform, CommutationPhasesMatchRegularTwistedRepresentation) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = random_group(rng);
    const auto psi = random_cocycle(rng, g);
    const auto ts = deform(DeformationData(translation_system(g), psi));
    const auto phases = commutation_phases(ts);
    const auto t = regular_twisted(psi);
    for (int mu = 0; mu < g.order(); ++mu)
      for (int nu = 0; nu < g.order(); ++nu) {
        // T_mu T_nu = c T_nu T_mu with c = psi(mu,nu) / psi(nu,mu)
        const Mat ab = t[mu] * t[nu], ba = t[nu] * t[mu];
        const cplx c = (ba.adjoint() * ab).trace() / (ba.adjoint() * ba).trace();
        EXPECT_NEAR(std::abs(phases(mu, nu) - c), 0.0, 1e-9) << mu << "," << nu;
      }
  }
}

TEST(Deform, DimensionIsPreservedOnRandomInstances) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = random_group(rng);
    const auto psi = random_cocycle(rng, g);
    const auto ts = deform(DeformationData(translation_system(g), psi));
    EXPECT_EQ(ts.a_psi.dim(), g.order());
    EXPECT_TRUE(ts.a_psi.contains_unit());
    const auto cl = ts.a_psi.closure_residual();
    EXPECT_LT(std::max(cl.star, cl.product), 1e-9);
    const auto eq = verify_eqgam(ts);
    EXPECT_TRUE(eq.pass) << eq.message;
    EXPECT_EQ(eq.dim, eq.expected_dim);
  }
}

TEST(Deform, UCocycleAndComposition) {
  std::mt19937_64 rng(52);
  const FiniteAbelianGroup g({2, 4});
  const auto gp = crossed_product(translation_system(g));
  const auto p1 = random_cocycle(rng, g), p2 = random_cocycle(rng, g);
  EXPECT_LT(u_cocycle_residual(gp, p1), 1e-12);
  EXPECT_LT(composition_residual(gp, p1, p2), 1e-12);
  // deforming by Psi and then by conj(Psi) undoes the twist
  const auto back = gp.deformed(p1).deformed(p1.conj());
  for (int chi = 0; chi < g.order(); ++chi)
    for (int i = 0; i < gp.algebra().dim(); i += 7) {
      const Vec b = gp.algebra().element(i);
      EXPECT_LT((back.dual_action(chi, b) - gp.dual_action(chi, b)).norm(), 1e-12);
    }
}

TEST(Deform, CoboundaryTransport) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = random_group(rng);
    const auto r = coboundary_transport(translation_system(g), random_function(rng, g.order()));
    EXPECT_TRUE(r.pass) << r.message;
    EXPECT_LT(r.distance, 1e-9);
  }
}

TEST(Deform, CohomologousCocyclesGiveTheSameBlocks) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = random_group(rng);
    const auto psi = random_bicharacter(rng, g);
    const auto moved = psi.multiply(coboundary(g, random_function(rng, g.order())));
    const auto a = deform(DeformationData(translation_system(g), psi));
    const auto b = deform(DeformationData(translation_system(g), moved));
    EXPECT_EQ(block_decomposition(a.a_psi).sizes, block_decomposition(b.a_psi).sizes);
  }
}

TEST(Deform, CanonicalRepresentationIsFaithfulOnBoth) {
  const FiniteAbelianGroup g({2, 2});
  const auto ts = deform(DeformationData(translation_system(g), kp(g, 2)));
  auto target = std::make_shared<MatrixAmbient>(4);
  const auto& amb = *ts.gp.ambient();
  const CoordMap pi = [&](const Vec& x) { return target->coords(amb.canonical(x)); };
  const auto r = verify_faithful(ts, pi, target);
  EXPECT_TRUE(r.pass) << r.message;
  EXPECT_TRUE(r.faithful_on_a);
  EXPECT_TRUE(r.faithful_on_a_psi);
}

TEST(Deform, CharacterIsFaithfulOnNeither) {
  // C^2 with trivial Z2 action: B = C^2 (x) C*(Z2) is commutative, and a(0) lambda_h -> a(0) is a character
  const FiniteAbelianGroup g({2});
  const auto ts = deform(DeformationData(trivial_system(function_algebra(2), g), TwoCocycle::trivial(g)));
  auto target = std::make_shared<MatrixAmbient>(1);
  const auto& amb = *ts.gp.ambient();
  const CoordMap chi = [&](const Vec& x) { return Vec::Constant(1, amb.block(x, 0)(0, 0) + amb.block(x, 1)(0, 0)); };
  const auto r = verify_faithful(ts, chi, target);
  EXPECT_TRUE(r.pass) << r.message;
  EXPECT_FALSE(r.faithful_on_a);
  EXPECT_FALSE(r.faithful_on_a_psi);
}

TEST(Deform, KTheoryNoteOnTheTorus) {
  const FiniteAbelianGroup g({2, 2});
  const auto k = k_theory_note(deform(DeformationData(translation_system(g), kp(g, 2))));
  EXPECT_EQ(k.blocks_before, 4);
  EXPECT_EQ(k.blocks_after, 1);
  EXPECT_NE(k.note.find("R^n"), std::string::npos);
}

TEST(Deform, TrivialActionIsNotDeformed) {
  const auto m2 = StarAlgebra::from_span(std::make_shared<MatrixAmbient>(2), Mat::Identity(4, 4));
  const FiniteAbelianGroup g({2, 2});
  const auto ts = deform(DeformationData(trivial_system(m2, g), kp(g, 2)));
  EXPECT_EQ(block_decomposition(ts.a_psi).sizes, std::vector<int>{2});
  EXPECT_LT(subspace_distance(ts.a_psi.basis(), ts.pi_a.basis()), 1e-10);
}
