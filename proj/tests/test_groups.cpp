#include <gtest/gtest.h>

#include "rieffel/errors.hpp"
#include "rieffel/groups.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace testing_support;

TEST(Phase, ReducesAndWraps) {
  EXPECT_EQ(Phase(6, 8), Phase(3, 4));
  EXPECT_EQ(Phase(-1, 4), Phase(3, 4));
  EXPECT_EQ(Phase(5, 4), Phase(1, 4));
  EXPECT_TRUE(Phase(4, 4).is_one());
  EXPECT_THROW(Phase(1, 0), std::invalid_argument);
}

TEST(Phase, Arithmetic) {
  EXPECT_EQ(Phase(1, 4) * Phase(1, 6), Phase(5, 12));
  EXPECT_EQ(Phase(1, 3) / Phase(1, 2), Phase(5, 6));
  EXPECT_EQ(Phase(1, 3).conj(), Phase(2, 3));
  EXPECT_EQ(Phase(1, 5).pow(7), Phase(2, 5));
  EXPECT_EQ(Phase(1, 2).root(2), Phase(1, 4));
  EXPECT_EQ(Phase(1, 2).root(2).pow(2), Phase(1, 2));
}

TEST(Phase, ValueMatchesExponential) {
  for (int den = 1; den <= 12; ++den)
    for (int num = 0; num < den; ++num)
      EXPECT_NEAR(std::abs(Phase(num, den).value() - root_of_unity(num, den)), 0.0, 1e-15);
}

TEST(AbelianGroup, MixedRadixWithFirstFactorMostSignificant) {
  const FiniteAbelianGroup g({2, 3});
  EXPECT_EQ(g.order(), 6);
  EXPECT_EQ(g.index({1, 2}), 5);
  EXPECT_EQ(g.coords(4), (std::vector<int>{1, 1}));
  EXPECT_EQ(g.generator(0), 3);
  EXPECT_EQ(g.generator(1), 1);
  EXPECT_EQ(g.add(5, 4), g.index({0, 0}));
  EXPECT_EQ(g.neg(1), 2);
  EXPECT_EQ(g.describe(), "Z2xZ3");
}

TEST(AbelianGroup, PairingMatchesDigitFormula) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_group(rng, 3);
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y)
        ASSERT_NEAR(std::abs(g.pairing(x, y).value() - pairing_oracle(g.factors(), x, y)), 0.0, 1e-14);
  }
}

TEST(AbelianGroup, FourierRoundTrip) {
  std::mt19937_64 rng(2);
  Rng vr(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_group(rng, 3);
    const Vec h = random_vector(vr, g.order());
    EXPECT_LT((g.inverse_fourier(g.fourier(h)) - h).norm(), 1e-12);
    // Plancherel: ||F h||^2 = |G| ||h||^2
    EXPECT_NEAR(g.fourier(h).squaredNorm(), g.order() * h.squaredNorm(), 1e-10);
  }
}

TEST(AbelianGroup, PairingIsABicharacter) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_group(rng, 2);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    const int a = pick(rng), b = pick(rng), x = pick(rng);
    EXPECT_EQ(g.pairing(g.add(a, b), x), g.pairing(a, x) * g.pairing(b, x));
    EXPECT_EQ(g.pairing(x, g.add(a, b)), g.pairing(x, a) * g.pairing(x, b));
  }
}

TEST(AbelianHom, RejectsIllDefinedGeneratorImages) {
  const auto z2 = FiniteAbelianGroup::cyclic(2), z4 = FiniteAbelianGroup::cyclic(4);
  EXPECT_NO_THROW(AbelianHom::from_generators(z2, z4, {2}));
  EXPECT_THROW(AbelianHom::from_generators(z2, z4, {1}), ValidationError);
}

TEST(AbelianHom, DualMapSatisfiesPairingIdentity) {
  const FiniteAbelianGroup src({4}), dst({2, 4});
  const auto phi = AbelianHom::from_generators(src, dst, {dst.index({1, 2})});
  const auto phit = dual_hom(phi);
  for (int chi = 0; chi < dst.order(); ++chi)
    for (int g = 0; g < src.order(); ++g) EXPECT_EQ(src.pairing(phit(chi), g), dst.pairing(chi, phi(g)));
}

TEST(FiniteGroup, DihedralRelations) {
  for (int n : {3, 4, 8}) {
    const auto d = FiniteGroup::dihedral(n);
    const int r = 1, s = n;
    EXPECT_EQ(d.order(), 2 * n);
    EXPECT_FALSE(d.is_abelian());
    int rn = d.identity();
    for (int k = 0; k < n; ++k) rn = d.mul(rn, r);
    EXPECT_EQ(rn, d.identity());
    EXPECT_EQ(d.mul(s, s), d.identity());
    EXPECT_EQ(d.mul(d.mul(s, r), s), d.inv(r));
  }
}

TEST(FiniteGroup, QuaternionAndHeisenberg) {
  const auto q = FiniteGroup::quaternion();
  EXPECT_EQ(q.order(), 8);
  EXPECT_FALSE(q.is_abelian());
  int squares = 0;
  for (int x = 0; x < 8; ++x) squares += q.mul(x, x) == q.identity();
  EXPECT_EQ(squares, 2);  // only +-1 square to 1

  const auto h = FiniteGroup::heisenberg(3);
  EXPECT_EQ(h.order(), 27);
  EXPECT_FALSE(h.is_abelian());
  EXPECT_TRUE(FiniteGroup::from_abelian(FiniteAbelianGroup({2, 3})).is_abelian());
}

TEST(FiniteGroup, RejectsNonGroupTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), Error);
}

TEST(SubgroupEmbedding, KleinSubgroupOfD4) {
  const auto d4 = FiniteGroup::dihedral(4);
  const FiniteAbelianGroup z22({2, 2});
  const auto iota = SubgroupEmbedding::from_generators(z22, d4, {2, 4});
  EXPECT_EQ(iota.images(), (std::vector<int>{0, 4, 2, 6}));
  EXPECT_THROW(SubgroupEmbedding::from_generators(z22, d4, {2, 2}), Error);
  EXPECT_THROW(SubgroupEmbedding::from_generators(FiniteAbelianGroup({4}), d4, {4}), Error);
}
