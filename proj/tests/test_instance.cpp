#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "rieffel/errors.hpp"
#include "rieffel/runner.hpp"

using namespace rieffel;

namespace {

const std::filesystem::path kData = std::filesystem::path(__FILE__).parent_path() / "data";

const CheckResult* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Catalog, ListsEveryInstanceAndLoadsThem) {
  const auto entries = catalog();
  EXPECT_EQ(entries.size(), 12u);
  for (const auto& e : entries) {
    const auto in = catalog_instance(e.id);
    EXPECT_EQ(in.id, e.id);
    EXPECT_TRUE(in.deformation || in.quantum) << e.id;
  }
  EXPECT_THROW(catalog_instance("nope"), ValidationError);
}

TEST(Parse, GroupsCocyclesAndMatrices) {
  EXPECT_EQ(parse_abelian_group(json::parse("[2, 3]")), FiniteAbelianGroup({2, 3}));
  EXPECT_EQ(parse_abelian_group(json::parse(R"({"kind":"abelian","factors":[4]})")), FiniteAbelianGroup({4}));
  const auto g = parse_group(json::parse(R"({"kind":"table","order":2,"cayley":[[0,1],[1,0]]})"));
  EXPECT_EQ(g.order(), 2);
  EXPECT_THROW(parse_group(json::parse(R"({"kind":"table","order":3,"cayley":[[0,1],[1,0]]})")), ValidationError);

  const FiniteAbelianGroup z22({2, 2});
  const auto psi = parse_cocycle(json::parse(R"({"kind":"bicharacter","exponent_matrix":[[0,0],[1,0]],"modulus":2})"), z22);
  EXPECT_EQ(psi, TwoCocycle::bicharacter(z22, {{0, 0}, {1, 0}}, 2));
  EXPECT_THROW(parse_cocycle(json::parse(R"({"kind":"whatever"})"), z22), ValidationError);

  const Mat m = parse_matrix(json::parse("[[1, [0, 2]], [3, 4]]"));
  EXPECT_EQ(m(0, 1), cplx(0, 2));
  EXPECT_EQ(parse_matrix(matrix_to_json(m)), m);
  EXPECT_THROW(parse_matrix(json::parse("[[1, 2], [3]]")), ValidationError);
}

TEST(Parse, SubgroupElementsMustMatch) {
  const auto d4 = FiniteGroup::dihedral(4);
  const FiniteAbelianGroup z22({2, 2});
  EXPECT_NO_THROW(parse_subgroup(json::parse(R"({"generator_images":[2,4],"elements":[0,2,4,6]})"), z22, d4));
  EXPECT_THROW(parse_subgroup(json::parse(R"({"generator_images":[2,4],"elements":[0,1,4,6]})"), z22, d4),
               ValidationError);
}

TEST(Parse, InstanceFiles) {
  const auto t = load_instance(kData / "z3sq_translation.json");
  ASSERT_TRUE(t.deformation);
  EXPECT_EQ(t.deformation->ds.gamma().order(), 9);
  const auto q8 = load_instance(kData / "q8_center.json");
  ASSERT_TRUE(q8.quantum);
  EXPECT_FALSE(q8.deformation);
  EXPECT_THROW(load_instance(kData / "bad_cocycle.json"), ValidationError);
  EXPECT_THROW(load_instance(kData / "missing.json"), ValidationError);
  EXPECT_THROW(parse_instance(json::parse(R"({"action":{"kind":"spin"}})")), ValidationError);
}

TEST(Runner, DeformReportOnTheKleinTorus) {
  const auto r = run_deform(catalog_instance("z2sq-nondeg"), RunSettings{});
  EXPECT_TRUE(r.pass());
  ASSERT_NE(find(r, "generated_by_a_psi_and_lambda"), nullptr);
  ASSERT_NE(find(r, "landstad_routes"), nullptr);
  EXPECT_EQ(r.data["blocks"], json::array({2}));
  EXPECT_EQ(r.data["commutative"], false);
  const json j = r.to_json();
  EXPECT_EQ(j["instance"], "z2sq-nondeg");
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Runner, QuantumGroupReportFields) {
  const auto r = run_quantum_group(catalog_instance("d4-kp"), RunSettings{});
  EXPECT_TRUE(r.pass());
  for (const char* key : {"pentagon_residual", "manageable", "slice_dim", "blocks", "commutative", "cocommutative", "haar",
                          "dual", "evaluation"})
    EXPECT_TRUE(r.data.contains(key)) << key;
  EXPECT_EQ(r.data["slice_dim"], 8);
  EXPECT_EQ(r.data["dual"]["blocks"], json::array({1, 1, 1, 1, 2}));
  EXPECT_EQ(r.data["cocommutative"]["value"], false);
}

TEST(Runner, FailingChecksAreReported) {
  Report r;
  r.check("small", 1e-9, [] { return 1e-12; });
  r.check("large", 1e-9, [] { return 1.0; });
  r.check("throws", 1e-9, []() -> double { throw NumericalError("no decision"); });
  r.expect("holds", [] { return true; });
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(find(r, "small")->pass);
  EXPECT_FALSE(find(r, "large")->pass);
  EXPECT_FALSE(find(r, "throws")->pass);
  EXPECT_TRUE(r.data.contains("errors"));
}

TEST(Runner, RelationsReport) {
  const NormalPair pair(Mat::Identity(2, 2), Mat::Identity(2, 2) * 2.0);
  EXPECT_TRUE(run_relations(pair, RunSettings{}).pass());
  EXPECT_FALSE(run_relations(NormalPair(pair.R, pair.S, 4.0, 1.0), RunSettings{}).pass());
}
