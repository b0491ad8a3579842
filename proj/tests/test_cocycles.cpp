#include <gtest/gtest.h>

#include "rieffel/cocycles.hpp"
#include "rieffel/errors.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace testing_support;

namespace {

// (-1)^{x_2 y_1} on Z2 x Z2, entries written out by hand
TwoCocycle z22_nondeg() { return TwoCocycle::bicharacter(FiniteAbelianGroup({2, 2}), {{0, 0}, {1, 0}}, 2); }

}  // namespace

TEST(Cocycle, HandWrittenTable) {
  const auto psi = z22_nondeg();
  const FiniteAbelianGroup g({2, 2});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const int sign = (g.coords(x)[1] * g.coords(y)[0]) % 2;
      EXPECT_EQ(psi(x, y), Phase(sign, 2)) << x << "," << y;
    }
}

TEST(Cocycle, RejectsNonCocycleWithWitness) {
  const FiniteAbelianGroup z3({3});
  std::vector<Phase> e(9);
  e[1 * 3 + 1] = Phase(1, 3);  // only Psi(1,1) nontrivial
  const auto rep = verify_cocycle(PhaseTable(z3, e));
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.witness.has_value());
  const auto [x, y, z] = *rep.witness;
  const auto p = [&](int a, int b) { return e[a * 3 + b]; };
  EXPECT_NE(p(x, y) * p(z3.add(x, y), z), p(y, z) * p(x, z3.add(y, z)));
  EXPECT_THROW(TwoCocycle(z3, e), ValidationError);
}

TEST(Cocycle, RejectsUnnormalizedTable) {
  const FiniteAbelianGroup z2({2});
  std::vector<Phase> e(4, Phase(1, 2));
  const auto rep = verify_cocycle(PhaseTable(z2, e));
  EXPECT_FALSE(rep.normalized);
  EXPECT_FALSE(rep.pass);
}

TEST(Cocycle, BicharacterRejectsIllDefinedExponents) {
  // x_1 y_1 / 4 on Z2 is not well defined on residues
  EXPECT_THROW(TwoCocycle::bicharacter(FiniteAbelianGroup({2}), {{1}}, 4), ValidationError);
}

TEST(Cocycle, DerivedCocyclesMatchDefinitions) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = random_group(rng);
    const auto psi = random_cocycle(rng, g);
    const auto t = psi.tilde(), f = psi.flip(), c = psi.conj();
    const auto st = psi.star();
    const auto u = psi.u_element();
    for (int x = 0; x < g.order(); ++x) {
      EXPECT_EQ(u[x], psi(g.neg(x), x));
      for (int y = 0; y < g.order(); ++y) {
        ASSERT_EQ(t(x, y), psi(g.neg(x), g.neg(y)).conj());
        ASSERT_EQ(f(x, y), psi(y, x));
        ASSERT_EQ(c(x, y), psi(x, y).conj());
        ASSERT_EQ(st(x, y), psi(x, g.sub(g.neg(x), y)).conj());
        ASSERT_EQ(psi.column(y)[x], psi(x, y));
      }
    }
  }
}

TEST(Cocycle, IdentitiesHoldOnRandomCocycles) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = random_group(rng);
    const auto psi = random_cocycle(rng, g);
    EXPECT_FALSE(check_star_identity(psi).has_value());
    EXPECT_FALSE(check_u_cocycle_identity(psi).has_value());
    EXPECT_TRUE(verify_cocycle(psi.multiply(random_cocycle(rng, g))).pass);
  }
}

TEST(Cocycle, TensorProductIsACocycleOnTheProduct) {
  std::mt19937_64 rng(12);
  const FiniteAbelianGroup a({2, 2}), b({3});
  const auto p1 = random_cocycle(rng, a), p2 = random_cocycle(rng, b);
  const auto t = p1.tensor(p2);
  EXPECT_EQ(t.group(), a.product(b));
  for (int x1 = 0; x1 < 4; ++x1)
    for (int x2 = 0; x2 < 4; ++x2)
      for (int y1 = 0; y1 < 3; ++y1)
        for (int y2 = 0; y2 < 3; ++y2)
          EXPECT_EQ(t(a.pair_index(b, x1, y1), a.pair_index(b, x2, y2)), p1(x1, x2) * p2(y1, y2));
}

TEST(Cocycle, AntisymmetrizationOfTheNondegenerateCocycle) {
  const auto beta = z22_nondeg().antisymmetrization();
  const FiniteAbelianGroup g({2, 2});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const auto cx = g.coords(x), cy = g.coords(y);
      EXPECT_EQ(beta(x, y), Phase(cx[0] * cy[1] + cx[1] * cy[0], 2));
    }
}

TEST(Cohomology, CoboundaryIsTrivialWithWitness) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_group(rng);
    const auto f = random_function(rng, g.order());
    const auto df = coboundary(g, f);
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y) ASSERT_EQ(df(x, y), f[g.add(x, y)] / (f[x] * f[y]));
    const auto r = cohomologous(TwoCocycle::trivial(g), df);
    ASSERT_TRUE(r.cohomologous);
    ASSERT_TRUE(r.witness.has_value());
    const auto back = coboundary(g, *r.witness);
    EXPECT_EQ(back, static_cast<const PhaseTable&>(df));
  }
}

TEST(Cohomology, FlipsOnZ2SquaredAreCohomologous) {
  // the ratio psi^flip / psi is alternating with values +-1, so symmetric, so a coboundary
  const auto psi = z22_nondeg();
  EXPECT_TRUE(cohomologous(psi, psi.flip()).cohomologous);
}

TEST(Cohomology, FlippedNondegenerateCocycleIsNotCohomologous) {
  const auto psi = TwoCocycle::bicharacter(FiniteAbelianGroup({3, 3}), {{0, 0}, {1, 0}}, 3);
  const auto r = cohomologous(psi, psi.flip());
  EXPECT_FALSE(r.cohomologous);
  ASSERT_TRUE(r.obstruction.has_value());
  const auto [x, y] = *r.obstruction;
  const auto ratio = psi.flip().multiply(psi.conj());
  EXPECT_NE(ratio(x, y), ratio(y, x));
}

TEST(Cohomology, SymmetricCocyclesOnCyclicGroupsAreTrivial) {
  std::mt19937_64 rng(14);
  for (int n : {2, 3, 4, 5, 6}) {
    const FiniteAbelianGroup g({n});
    const auto psi = random_cocycle(rng, g);
    EXPECT_TRUE(cohomologous(psi, TwoCocycle::trivial(g)).cohomologous);
  }
}
