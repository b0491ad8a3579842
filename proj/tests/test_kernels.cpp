#include <gtest/gtest.h>

#include "rieffel/gammaprod.hpp"
#include "rieffel/kernels.hpp"
#include "rieffel/operator.hpp"
#include "support.hpp"

using namespace rieffel;
using namespace rieffel::kernels;

namespace {

// swap legs 2 and 3 of C^n (x) C^n (x) C^n
Vec swap23(const Vec& v, int n) {
  Vec out(v.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out((i * n + k) * n + j) = v((i * n + j) * n + k);
  return out;
}

Vec two_leg_oracle(const Mat& t, Legs legs, int n, const Vec& v) {
  const Mat id = Mat::Identity(n, n);
  switch (legs) {
    case Legs::L12: return kron(t, id) * v;
    case Legs::L23: return kron(id, t) * v;
    case Legs::L13: return swap23(kron(t, id) * swap23(v, n), n);
  }
  return {};
}

CrossedTable table_for(const DynamicalSystem& ds) { return CrossedAmbient(ds.gamma(), ds.unitaries()).table(); }

Vec random_crossed(Rng& rng, const CrossedTable& ct, double zero_fraction) {
  Vec x = random_vector(rng, ct.order * ct.n * ct.n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int g = 0; g < ct.order; ++g)
    if (u(rng) < zero_fraction) x.segment(g * ct.n * ct.n, ct.n * ct.n).setZero();
  return x;
}

}  // namespace

TEST(Kernels, TwoLegSerialMatchesKronOracle) {
  Rng rng(20);
  for (int n : {2, 3, 5})
    for (Legs legs : {Legs::L12, Legs::L23, Legs::L13}) {
      const Mat t = random_matrix(rng, n * n, n * n);
      const Vec v = random_vector(rng, n * n * n);
      Vec out(v.size());
      apply_two_leg_serial(t, legs, n, v.data(), out.data());
      EXPECT_LT((out - two_leg_oracle(t, legs, n, v)).norm(), 1e-12 * v.norm() * t.norm());
    }
}

TEST(Kernels, TwoLegParallelIsBitIdentical) {
  Rng rng(21);
  for (int n : {3, 6})
    for (Legs legs : {Legs::L12, Legs::L23, Legs::L13}) {
      const Mat t = random_matrix(rng, n * n, n * n);
      const Vec v = random_vector(rng, n * n * n);
      Vec a(v.size()), b(v.size());
      apply_two_leg_serial(t, legs, n, v.data(), a.data());
      apply_two_leg_omp(t, legs, n, v.data(), b.data());
      EXPECT_EQ(a, b);
    }
}

TEST(Kernels, CrossedMultiplyMatchesRegularRepresentation) {
  Rng rng(22);
  const auto d4 = FiniteGroup::dihedral(4);
  const auto iota = SubgroupEmbedding::from_generators(FiniteAbelianGroup({2, 2}), d4, {2, 4});
  const auto m2 = DynamicalSystem(StarAlgebra::from_span(std::make_shared<MatrixAmbient>(2), Mat::Identity(4, 4)),
                                  FiniteAbelianGroup({2}),
                                  {Mat::Identity(2, 2), Mat(Eigen::Vector2cd(1.0, -1.0).asDiagonal())});
  for (const auto& ds : {translation_system(FiniteAbelianGroup({2, 3})), left_right_system(d4, iota), m2}) {
    const CrossedAmbient amb(ds.gamma(), ds.unitaries());
    for (int trial = 0; trial < 5; ++trial) {
      const Vec x = random_crossed(rng, amb.table(), 0.3), y = random_crossed(rng, amb.table(), 0.3);
      const Mat lhs = amb.materialize(amb.multiply(x, y));
      const Mat rhs = amb.materialize(x) * amb.materialize(y);
      EXPECT_LT((lhs - rhs).norm(), 1e-11 * (1.0 + rhs.norm())) << ds.name();
      EXPECT_LT((amb.materialize(amb.adjoint(x)) - amb.materialize(x).adjoint()).norm(), 1e-12);
    }
  }
}

TEST(Kernels, CrossedMultiplyParallelIsBitIdentical) {
  Rng rng(23);
  for (const auto& ds : {translation_system(FiniteAbelianGroup({4, 4})),
                         left_right_system(FiniteGroup::dihedral(4),
                                           SubgroupEmbedding::from_generators(FiniteAbelianGroup({2, 2}),
                                                                              FiniteGroup::dihedral(4), {2, 4}))}) {
    const auto ct = table_for(ds);
    const Vec x = random_crossed(rng, ct, 0.25), y = random_crossed(rng, ct, 0.25);
    Vec a(x.size()), b(x.size());
    crossed_multiply_serial(ct, x.data(), y.data(), a.data());
    crossed_multiply_omp(ct, x.data(), y.data(), b.data());
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, ProbeResidualSerialAndParallelAgree) {
  Rng rng(24);
  const int d = 40;
  const Mat a = random_matrix(rng, d, d);
  Mat b = a;
  b(3, 7) += 0.5;
  const LinearMap fa = [&](const Vec& v) { return Vec(a * v); };
  const LinearMap fb = [&](const Vec& v) { return Vec(b * v); };
  const double s = probe_residual_serial(fa, fb, d, 16, 99);
  const double p = probe_residual_omp(fa, fb, d, 16, 99);
  EXPECT_EQ(s, p);
  EXPECT_GT(s, 0.0);
  EXPECT_LE(s, 0.5 + 1e-12);  // never exceeds the operator norm of the difference
  EXPECT_EQ(probe_residual_serial(fa, fa, d, 16, 99), 0.0);
}

TEST(Kernels, DispatchFollowsSwitch) {
  set_parallel(false);
  EXPECT_FALSE(parallel_enabled());
  set_parallel(true);
  EXPECT_EQ(parallel_enabled(), openmp_available());
}

TEST(Operator, LazyTreeMatchesMaterializedAlgebra) {
  Rng rng(25);
  const int n = 3;
  const Mat a = random_matrix(rng, n * n, n * n), b = random_matrix(rng, n, n);
  const Operator oa = Operator::dense(a), ob = Operator::dense(b);
  const Operator t13 = Operator::on_legs(oa, {n, n, n}, {0, 2});
  const Vec v = random_vector(rng, n * n * n);
  EXPECT_LT((t13.apply(v) - two_leg_oracle(a, Legs::L13, n, v)).norm(), 1e-12 * a.norm() * v.norm());
  // reversed leg order is the flipped operator
  const Operator t31 = Operator::on_legs(oa, {n, n}, {1, 0});
  Mat flip = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flip(j * n + i, i * n + j) = 1.0;
  EXPECT_LT((t31.materialize() - flip * a * flip).norm(), 1e-12 * a.norm());

  const Operator k = Operator::kron(ob, Operator::identity(n));
  EXPECT_LT((k.materialize() - kron(b, Mat::Identity(n, n))).norm(), 1e-13);
  const Operator s = Operator::sum({Operator::scaled(2.0, k), Operator::dense(a)});
  EXPECT_LT((s.adjoint().materialize() - (2.0 * kron(b, Mat::Identity(n, n)) + a).adjoint()).norm(), 1e-12);
  const Operator p = Operator::permutation({2, 0, 1}, {1.0, cplx(0, 1), -1.0});
  Mat pm = Mat::Zero(3, 3);
  pm(2, 0) = 1.0;
  pm(0, 1) = cplx(0, 1);
  pm(1, 2) = -1.0;
  EXPECT_EQ(p.materialize(), pm);
  EXPECT_LT((p.adjoint().materialize() - pm.adjoint()).norm(), 1e-15);
}

TEST(Operator, DistanceDenseAndProbedAgreeOnRankOneDifference) {
  Rng rng(26);
  const int d = 30;
  const Mat a = random_matrix(rng, d, d);
  const Vec u = random_vector(rng, d).normalized();
  const Mat b = a + 0.25 * u * u.adjoint();
  const double dense = operator_distance(Operator::dense(a), Operator::dense(b), 16, 0, 4096);
  const double probed = operator_distance(Operator::dense(a), Operator::dense(b), 16, 0, 1);
  EXPECT_NEAR(dense, 0.25, 1e-12);
  EXPECT_GT(probed, 0.0);
  EXPECT_LE(probed, 0.25 + 1e-12);
}
