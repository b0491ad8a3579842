#include "rieffel/instance.hpp"

#include <fstream>
#include <random>

#include "rieffel/errors.hpp"

namespace rieffel {

namespace {

StarAlgebra full_matrix_algebra(int n) {
  auto amb = std::make_shared<MatrixAmbient>(n);
  return StarAlgebra(amb, Mat::Identity(n * n, n * n));
}

StarAlgebra diagonal_subalgebra(int n, const std::vector<int>& support) {
  auto amb = std::make_shared<MatrixAmbient>(n);
  Mat cols = Mat::Zero(n * n, static_cast<int>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= n) throw ValidationError("ideal support index out of range");
    cols(support[i] * n + support[i], static_cast<int>(i)) = 1.0;
  }
  return StarAlgebra(amb, cols);
}

/// Translation of Gamma on several disjoint copies of itself.
DynamicalSystem copies_translation(const FiniteAbelianGroup& gamma, int copies) {
  const int m = gamma.order();
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < gamma.rank(); ++i) {
    std::vector<int> p(m * copies);
    for (int c = 0; c < copies; ++c)
      for (int x = 0; x < m; ++x) p[c * m + x] = c * m + gamma.add(x, gamma.generator(i));
    perms.push_back(p);
  }
  return permutation_system(m * copies, gamma, perms, std::to_string(copies) + " copies of " + gamma.describe());
}

TwoCocycle nondegenerate(const FiniteAbelianGroup& dual, long modulus) {
  return TwoCocycle::bicharacter(dual, {{0, 0}, {1, 0}}, modulus);
}

TwoCocycle z2xz4_cocycle(const FiniteAbelianGroup& dual) {
  // bicharacter times a coboundary of a seeded random function
  const TwoCocycle b = TwoCocycle::bicharacter(dual, {{0, 2}, {2, 0}}, 4);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<Phase> f(dual.order());
  for (int x = 1; x < dual.order(); ++x) f[x] = Phase(pick(rng), 8);
  return b.multiply(coboundary(dual, f));
}

QuantumSpec dihedral_spec(int n, bool twisted) {
  const FiniteAbelianGroup z22({2, 2});
  FiniteGroup g = FiniteGroup::dihedral(n);
  // Gamma = {e, r^{n/2}, s, r^{n/2} s}; r^a s^e has index a + n e
  SubgroupEmbedding iota = SubgroupEmbedding::from_generators(z22, g, {n / 2, n});
  TwoCocycle psi = twisted ? nondegenerate(z22.dual(), 2) : TwoCocycle::trivial(z22.dual());
  return QuantumSpec{std::move(g), std::move(iota), std::move(psi)};
}

QuantumSpec abelian_spec(const FiniteAbelianGroup& gamma, const TwoCocycle& psi) {
  FiniteGroup g = FiniteGroup::from_abelian(gamma);
  std::vector<int> gens;
  for (int i = 0; i < gamma.rank(); ++i) gens.push_back(gamma.generator(i));
  SubgroupEmbedding iota = SubgroupEmbedding::from_generators(gamma, g, gens);
  return QuantumSpec{std::move(g), std::move(iota), psi};
}

DeformationData left_right_data(const QuantumSpec& q) {
  return DeformationData(left_right_system(q.group, q.iota), q.psi.tilde().tensor(q.psi));
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  return {
      {"z2-trivial-scalar", "C with the trivial action of Z2"},
      {"z2-translation", "C(Z2) with Z2 acting by translation"},
      {"m2-diag", "M2 with Z2 acting by Ad diag(1,-1)"},
      {"z2-first-coordinate", "C(Z2 x Z2), Z2 shifting the first coordinate, ideal of functions off an orbit"},
      {"z2sq-trivial", "C(Z2^2) by translation, trivial cocycle"},
      {"z2sq-nondeg", "C(Z2^2) by translation, cocycle (-1)^{bc}; quantum group with G = Gamma = Z2^2"},
      {"z4sq-nondeg", "C(Z4^2) by translation, cocycle i^{bc}"},
      {"z2xz4-random", "C(Z2 x Z4) by translation, bicharacter times a seeded coboundary"},
      {"two-copy-z2sq", "C(Z2^2 + Z2^2) by translation on both copies, ideal on the first copy, cocycle (-1)^{bc}"},
      {"identity-cocycle-d4", "D4 with Gamma = {e, r^2, s, r^2 s}, trivial cocycle"},
      {"d4-kp", "D4 with Gamma = {e, r^2, s, r^2 s}, cocycle (-1)^{bc}"},
      {"d8-kp", "D8 (order 16) with Gamma = {e, r^4, s, r^4 s}, cocycle (-1)^{bc}"},
  };
}

Instance catalog_instance(const std::string& id) {
  Instance in;
  in.id = id;
  for (const auto& e : catalog())
    if (e.id == id) in.description = e.description;
  if (in.description.empty()) throw ValidationError("unknown catalog instance '" + id + "'");

  const FiniteAbelianGroup z2({2}), z22({2, 2}), z44({4, 4}), z24({2, 4});
  if (id == "z2-trivial-scalar") {
    in.deformation.emplace(trivial_system(full_matrix_algebra(1), z2), TwoCocycle::trivial(z2.dual()));
  } else if (id == "z2-translation") {
    in.deformation.emplace(translation_system(z2), TwoCocycle::trivial(z2.dual()));
  } else if (id == "m2-diag") {
    Mat d = Mat::Identity(2, 2);
    d(1, 1) = -1.0;
    in.deformation.emplace(DynamicalSystem(full_matrix_algebra(2), z2, {Mat::Identity(2, 2), d}, "M2"),
                           TwoCocycle::trivial(z2.dual()));
  } else if (id == "z2-first-coordinate") {
    // point (x0, x1) has index 2 x0 + x1
    in.deformation.emplace(permutation_system(4, z2, {{2, 3, 0, 1}}, "C(Z2 x Z2)"), TwoCocycle::trivial(z2.dual()));
    in.ideal = diagonal_subalgebra(4, {1, 3});
  } else if (id == "z2sq-trivial") {
    in.deformation.emplace(translation_system(z22), TwoCocycle::trivial(z22.dual()));
  } else if (id == "z2sq-nondeg") {
    in.deformation.emplace(translation_system(z22), nondegenerate(z22.dual(), 2));
    in.quantum = abelian_spec(z22, nondegenerate(z22.dual(), 2));
  } else if (id == "z4sq-nondeg") {
    in.deformation.emplace(translation_system(z44), nondegenerate(z44.dual(), 4));
  } else if (id == "z2xz4-random") {
    in.deformation.emplace(translation_system(z24), z2xz4_cocycle(z24.dual()));
  } else if (id == "two-copy-z2sq") {
    in.deformation.emplace(copies_translation(z22, 2), nondegenerate(z22.dual(), 2));
    in.ideal = diagonal_subalgebra(8, {0, 1, 2, 3});
  } else if (id == "identity-cocycle-d4" || id == "d4-kp") {
    in.quantum = dihedral_spec(4, id == "d4-kp");
    in.deformation = left_right_data(*in.quantum);
  } else if (id == "d8-kp") {
    in.quantum = dihedral_spec(8, true);
  }
  return in;
}

// ---------------------------------------------------------------------------

FiniteAbelianGroup parse_abelian_group(const json& j) {
  if (j.is_array()) return FiniteAbelianGroup(j.get<std::vector<int>>());
  if (j.value("kind", "") != "abelian") throw ValidationError("expected an abelian group");
  return FiniteAbelianGroup(j.at("factors").get<std::vector<int>>());
}

FiniteGroup parse_group(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "abelian") return FiniteGroup::from_abelian(parse_abelian_group(j));
  if (kind != "table") throw ValidationError("unknown group kind '" + kind + "'");
  auto cayley = j.at("cayley").get<std::vector<std::vector<int>>>();
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(cayley.size()))
    throw ValidationError("group order does not match the Cayley table");
  return FiniteGroup(std::move(cayley), j.value("labels", std::vector<std::string>{}));
}

TwoCocycle parse_cocycle(const json& j, const FiniteAbelianGroup& dual) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") return TwoCocycle::trivial(dual);
  if (kind == "bicharacter")
    return TwoCocycle::bicharacter(dual, j.at("exponent_matrix").get<std::vector<std::vector<long>>>(),
                                   j.at("modulus").get<long>());
  if (kind == "table")
    return TwoCocycle::from_table(dual, j.at("num").get<std::vector<std::vector<long>>>(), j.at("den").get<long>());
  throw ValidationError("unknown cocycle kind '" + kind + "'");
}

SubgroupEmbedding parse_subgroup(const json& j, const FiniteAbelianGroup& gamma, const FiniteGroup& g) {
  const auto gens = j.at("generator_images").get<std::vector<int>>();
  for (int x : gens)
    if (x < 0 || x >= g.order()) throw ValidationError("generator image outside the group");
  SubgroupEmbedding iota = SubgroupEmbedding::from_generators(gamma, g, gens);
  if (j.contains("elements")) {
    auto listed = j.at("elements").get<std::vector<int>>();
    auto images = iota.images();
    std::sort(listed.begin(), listed.end());
    std::sort(images.begin(), images.end());
    if (listed != images) throw ValidationError("subgroup elements do not match the generated subgroup");
  }
  return iota;
}

Mat parse_matrix(const json& j) {
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw ValidationError("empty matrix");
  const int cols = static_cast<int>(j.at(0).size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols) throw ValidationError("ragged matrix");
    for (int c = 0; c < cols; ++c) {
      const json& e = j.at(r).at(c);
      m(r, c) = e.is_array() ? cplx(e.at(0).get<double>(), e.at(1).get<double>()) : cplx(e.get<double>(), 0.0);
    }
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

json resolve(const json& j, const std::filesystem::path& base) {
  if (!j.is_string()) return j;
  const std::filesystem::path p = base / j.get<std::string>();
  std::ifstream f(p);
  if (!f) throw ValidationError("cannot open " + p.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ValidationError(p.string() + ": " + e.what());
  }
}

Instance parse_instance(const json& j, const std::filesystem::path& base) {
  try {
    if (j.contains("catalog")) return catalog_instance(j.at("catalog").get<std::string>());
    Instance in;
    in.id = j.value("id", "custom");
    in.description = j.value("description", "");
    const json action = j.value("action", json::object());
    const std::string kind = action.value("kind", "");
    std::optional<FiniteGroup> g;
    if (j.contains("group")) g = parse_group(resolve(j.at("group"), base));
    std::optional<FiniteAbelianGroup> gamma;
    if (j.contains("gamma")) gamma = parse_abelian_group(resolve(j.at("gamma"), base));
    const json cocycle = j.contains("cocycle") ? resolve(j.at("cocycle"), base) : json{{"kind", "trivial"}};

    if (j.contains("subgroup")) {
      if (!g || !gamma) throw ValidationError("a subgroup needs \"group\" and \"gamma\"");
      SubgroupEmbedding iota = parse_subgroup(j.at("subgroup"), *gamma, *g);
      in.quantum = QuantumSpec{*g, iota, parse_cocycle(cocycle, gamma->dual())};
    }
    if (kind == "translation") {
      if (!j.contains("group")) throw ValidationError("translation action needs an abelian \"group\"");
      const FiniteAbelianGroup a = parse_abelian_group(resolve(j.at("group"), base));
      in.deformation.emplace(translation_system(a), parse_cocycle(cocycle, a.dual()));
    } else if (kind == "left-right") {
      if (!in.quantum) throw ValidationError("left-right action needs \"group\", \"gamma\" and \"subgroup\"");
      in.deformation = left_right_data(*in.quantum);
    } else if (kind == "trivial" || kind == "table") {
      if (!gamma) throw ValidationError("action needs \"gamma\"");
      StarAlgebra a;
      std::vector<Mat> u;
      if (kind == "trivial") {
        const int n = action.value("dim", 1);
        a = full_matrix_algebra(n);
        u.assign(gamma->order(), Mat::Identity(n, n));
      } else {
        std::vector<Mat> gens;
        for (const auto& m : action.at("generators")) gens.push_back(parse_matrix(m));
        if (static_cast<int>(gens.size()) != gamma->rank()) throw ValidationError("need one unitary per generator");
        const int n = static_cast<int>(gens.front().rows());
        const std::string alg = action.value("algebra", "full");
        if (alg == "full") {
          a = full_matrix_algebra(n);
        } else if (alg == "diagonal") {
          a = function_algebra(n);
        } else {
          throw ValidationError("unknown algebra '" + alg + "'");
        }
        for (int x = 0; x < gamma->order(); ++x) {
          const auto c = gamma->coords(x);
          Mat m = Mat::Identity(n, n);
          for (int i = 0; i < gamma->rank(); ++i)
            for (int k = 0; k < c[i]; ++k) m = gens[i] * m;
          u.push_back(m);
        }
      }
      in.deformation.emplace(DynamicalSystem(a, *gamma, u, in.id), parse_cocycle(cocycle, gamma->dual()));
    } else if (!kind.empty()) {
      throw ValidationError("unknown action kind '" + kind + "'");
    }
    if (j.contains("ideal")) {
      if (!in.deformation) throw ValidationError("an ideal needs an action");
      in.ideal = diagonal_subalgebra(in.deformation->ds.n(), j.at("ideal").at("support").get<std::vector<int>>());
    }
    if (!in.deformation && !in.quantum) throw ValidationError("instance has neither an action nor a subgroup");
    return in;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& file) {
  std::ifstream f(file);
  if (!f) throw ValidationError("cannot open " + file.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
  return parse_instance(j, file.parent_path());
}

}  // namespace rieffel
