#include <gtest/gtest.h>

#include "rieffel/errors.hpp"
#include "rieffel/gammaprod.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace testing_support;

namespace {

SubgroupEmbedding klein_in_d4() {
  return SubgroupEmbedding::from_generators(FiniteAbelianGroup({2, 2}), FiniteGroup::dihedral(4), {2, 4});
}

StarAlgebra full_m2() { return StarAlgebra::from_span(std::make_shared<MatrixAmbient>(2), Mat::Identity(4, 4)); }

}  // namespace

TEST(DynamicalSystem, TranslationMovesFunctions) {
  const FiniteAbelianGroup g({3, 2});
  const auto ds = translation_system(g);
  Rng rng(40);
  const Vec f = random_vector(rng, g.order());
  for (int h = 0; h < g.order(); ++h) {
    const Mat moved = ds.rho(h, Mat(f.asDiagonal()));
    for (int x = 0; x < g.order(); ++x) EXPECT_NEAR(std::abs(moved(x, x) - f(g.sub(x, h))), 0.0, 1e-14);
  }
}

TEST(DynamicalSystem, LeftRightShifts) {
  const auto d4 = FiniteGroup::dihedral(4);
  const auto iota = klein_in_d4();
  const auto ds = left_right_system(d4, iota);
  const auto& gg = ds.gamma();
  Rng rng(41);
  const Vec f = random_vector(rng, 8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat moved = ds.rho(gg.pair_index(iota.gamma(), a, b), Mat(f.asDiagonal()));
      for (int x = 0; x < 8; ++x) {
        const int y = d4.mul(d4.mul(d4.inv(iota(a)), x), iota(b));
        EXPECT_NEAR(std::abs(moved(x, x) - f(y)), 0.0, 1e-14);
      }
    }
}

TEST(DynamicalSystem, RejectsInvalidUnitaries) {
  const FiniteAbelianGroup z2({2});
  // diag(1, i) squares to diag(1, -1), not the identity
  const Mat d = Eigen::Vector2cd(1.0, cplx(0, 1)).asDiagonal();
  EXPECT_THROW(DynamicalSystem(full_m2(), z2, {Mat::Identity(2, 2), d}), ValidationError);
  EXPECT_THROW(DynamicalSystem(full_m2(), z2, {Mat::Identity(2, 2)}), StructuralError);
  // permutation of the wrong length
  EXPECT_THROW(permutation_system(3, z2, {{1, 2}}), Error);
}

TEST(CrossedProduct, DefiningRelationsHold) {
  for (const auto& ds : {translation_system(FiniteAbelianGroup({2, 3})), left_right_system(FiniteGroup::dihedral(4), klein_in_d4()),
                         trivial_system(full_m2(), FiniteAbelianGroup({3}))}) {
    const auto gp = crossed_product(ds);
    EXPECT_LT(gp.defining_relation_residual(), 1e-12);
    EXPECT_LT(gp.action_homomorphism_residual(), 1e-12);
    EXPECT_LT(gp.covariance_residual(), 1e-12);
    EXPECT_EQ(gp.dual_embedding_rank(), ds.gamma().order());
    EXPECT_EQ(gp.algebra().dim(), ds.algebra().dim() * ds.gamma().order());
  }
}

TEST(CrossedProduct, TranslationCrossedProductIsAFullMatrixAlgebra) {
  // C(Gamma) x| Gamma = M_|Gamma|
  for (const auto& g : {FiniteAbelianGroup({2}), FiniteAbelianGroup({2, 2}), FiniteAbelianGroup({3})}) {
    const auto gp = crossed_product(translation_system(g));
    EXPECT_EQ(block_decomposition(gp.algebra()).sizes, std::vector<int>{g.order()});
  }
}

TEST(CrossedProduct, LandstadAlgebraRecoversA) {
  for (const auto& ds : {translation_system(FiniteAbelianGroup({4})), left_right_system(FiniteGroup::dihedral(4), klein_in_d4()),
                         trivial_system(full_m2(), FiniteAbelianGroup({2}))}) {
    const auto gp = crossed_product(ds);
    const auto la = landstad_algebra(gp);
    const auto ln = landstad_nullspace(gp);
    const auto pa = pi_image(gp);
    EXPECT_EQ(la.dim(), ds.algebra().dim());
    EXPECT_LT(subspace_distance(la.basis(), pa.basis()), 1e-10);
    EXPECT_LT(subspace_distance(ln.basis(), pa.basis()), 1e-10);
  }
}

TEST(CrossedProduct, AverageIsTheProjectionOntoTheLandstadAlgebra) {
  const auto gp = crossed_product(translation_system(FiniteAbelianGroup({2, 2})));
  const auto pa = pi_image(gp);
  Rng rng(42);
  const Vec b = gp.algebra().basis() * random_vector(rng, gp.algebra().dim());
  const Vec e = gp.average_E(b);
  EXPECT_LT(pa.residual(e), 1e-12);
  EXPECT_LT((gp.average_E(e) - e).norm(), 1e-12);
}

TEST(CrossedProduct, EmbedAndCanonicalRepresentation) {
  const FiniteAbelianGroup g({4});
  const auto gp = crossed_product(translation_system(g));
  const auto& amb = *gp.ambient();
  // embed(delta_chi) is a spectral projection of lambda; the dual action moves it to embed(delta_{chi - chi'})
  const auto delta = [](int chi) {
    Vec d = Vec::Zero(4);
    d(chi) = 1.0;
    return d;
  };
  for (int chi = 0; chi < 4; ++chi) {
    const Vec p = gp.embed(delta(chi));
    EXPECT_LT((amb.multiply(p, p) - p).norm(), 1e-13);
    for (int chi2 = 0; chi2 < 4; ++chi2)
      EXPECT_LT((gp.dual_action(chi2, p) - gp.embed(delta(g.sub(chi, chi2)))).norm(), 1e-13);
  }
  // pi^can sends lambda_g to u_g
  for (int h = 0; h < 4; ++h)
    EXPECT_LT((amb.canonical(gp.lambda(h)) - gp.system().unitaries()[h]).norm(), 1e-14);
}

TEST(CrossedProduct, DeformedDualActionFixesLambda) {
  std::mt19937_64 rng(43);
  const FiniteAbelianGroup g({2, 4});
  const auto gp = crossed_product(translation_system(g));
  const auto psi = random_cocycle(rng, g);
  const auto d = gp.deformed(psi);
  EXPECT_LT(d.defining_relation_residual(), 1e-12);
  EXPECT_LT(d.action_homomorphism_residual(), 1e-12);
  EXPECT_EQ(d.twists().size(), 1u);
}

TEST(InducedMorphism, ReductionMapZ4ToZ2) {
  // C(Z2) with Z4 acting through Z4 -> Z2, mapped onto the Z2 translation crossed product
  const FiniteAbelianGroup z4({4}), z2({2});
  const auto gp = crossed_product(permutation_system(2, z4, {{1, 0}}));
  const auto gp2 = crossed_product(translation_system(z2));
  const auto phi = AbelianHom::from_generators(z4, z2, {1});
  const auto& amb = *gp.ambient();
  const auto& amb2 = *gp2.ambient();
  const CoordMap pi = [&](const Vec& x) {
    Vec y = Vec::Zero(amb2.coord_dim());
    for (int g = 0; g < 4; ++g) {
      Vec blk = Vec::Zero(amb2.coord_dim());
      amb2.set_block(blk, phi(g), amb.block(x, g));
      y += blk;
    }
    return y;
  };
  const auto r = induced_morphism(gp, gp2, pi, phi);
  EXPECT_TRUE(r.pass) << r.message;
  EXPECT_TRUE(r.surjective_on_b);
  EXPECT_TRUE(r.surjective_on_landstad);
  EXPECT_EQ(r.source_landstad_dim, 2);
  EXPECT_EQ(r.target_landstad_dim, 2);

  // the trivial homomorphism breaks lambda_g -> lambda'_phi(g)
  EXPECT_THROW(induced_morphism(gp, gp2, pi, AbelianHom::trivial(z4, z2)), ValidationError);
}

TEST(ExactSequence, TwoCopiesWithIdealOnTheFirst) {
  const FiniteAbelianGroup g({2, 2});
  const auto one = translation_system(g);
  std::vector<Mat> u;
  for (const auto& m : one.unitaries()) {
    Mat b = Mat::Zero(8, 8);
    b.topLeftCorner(4, 4) = m;
    b.bottomRightCorner(4, 4) = m;
    u.push_back(b);
  }
  const DynamicalSystem ds(function_algebra(8), g, u, "two copies");
  auto amb = std::make_shared<MatrixAmbient>(8);
  Mat ideal_cols = Mat::Zero(64, 4);
  for (int i = 0; i < 4; ++i) {
    Mat e = Mat::Zero(8, 8);
    e(i, i) = 1.0;
    ideal_cols.col(i) = amb->coords(e);
  }
  const auto ideal = StarAlgebra::from_span(amb, ideal_cols);
  const auto psi = TwoCocycle::bicharacter(g, {{0, 0}, {1, 0}}, 2);
  for (const auto& twists : {std::vector<TwoCocycle>{}, std::vector<TwoCocycle>{psi}}) {
    const auto r = exact_sequence_check(ds, ideal, twists);
    EXPECT_TRUE(r.pass) << r.message;
    EXPECT_EQ(r.ideal_dim, 4);
    EXPECT_EQ(r.quotient_dim, 4);
    EXPECT_EQ(r.algebra_dim, 8);
    EXPECT_LT(r.kernel_distance, 1e-9);
    EXPECT_LT(r.image_distance, 1e-9);
    // untwisted copies are C(Z2^2) = C^4; twisted ones are M_2
    const std::vector<int> expect = twists.empty() ? std::vector<int>{1, 1, 1, 1} : std::vector<int>{2};
    EXPECT_EQ(r.ideal_blocks, expect);
    EXPECT_EQ(r.quotient_blocks, expect);
  }
}
