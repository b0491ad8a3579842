#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rieffel/deform.hpp"
#include "rieffel/qgroup.hpp"

namespace rieffel {

using json = nlohmann::json;

/// G, an abelian subgroup and a cocycle on the dual of the subgroup.
struct QuantumSpec {
  FiniteGroup group;
  SubgroupEmbedding iota;
  TwoCocycle psi;
};

/// A named problem. Any of the parts may be absent; the runner executes the
/// pipelines whose inputs are present.
struct Instance {
  std::string id;
  std::string description;
  std::optional<DeformationData> deformation;
  std::optional<QuantumSpec> quantum;
  /// rho-invariant ideal of the deformation's algebra, for the exact-sequence check
  std::optional<StarAlgebra> ideal;
};

struct CatalogEntry {
  std::string id;
  std::string description;
};

std::vector<CatalogEntry> catalog();
/// Throws ValidationError for an unknown id.
Instance catalog_instance(const std::string& id);

// JSON formats. Groups: {"kind":"abelian","factors":[...]} or
// {"kind":"table","order":n,"cayley":[[...]],"labels":[...]}. Cocycles:
// {"kind":"bicharacter","exponent_matrix":[[...]],"modulus":N} or
// {"kind":"table","num":[[...]],"den":N}. Matrices: row-major arrays of
// [re, im] pairs.
FiniteAbelianGroup parse_abelian_group(const json& j);
FiniteGroup parse_group(const json& j);
TwoCocycle parse_cocycle(const json& j, const FiniteAbelianGroup& dual);
/// {"elements":[...], "generator_images":[...]} with gamma given separately;
/// elements, when present, must match the subgroup generated by the images.
SubgroupEmbedding parse_subgroup(const json& j, const FiniteAbelianGroup& gamma, const FiniteGroup& g);
Mat parse_matrix(const json& j);
json matrix_to_json(const Mat& m);

/// Loads a JSON value that is either inline or a path string relative to base.
json resolve(const json& j, const std::filesystem::path& base);

/// Instance file:
///   {"id", "description",
///    "group": group or path, "gamma": [factors], "subgroup": {...},
///    "action": {"kind":"translation"} | {"kind":"left-right"} |
///              {"kind":"trivial","dim":n} |
///              {"kind":"table","algebra":"full"|"diagonal","generators":[matrices]},
///    "cocycle": cocycle or path,
///    "ideal": {"support":[diagonal indices]}}
/// "translation" uses an abelian "group"; "left-right" deforms C(G) by
/// Psi~ (x) Psi and also sets up the quantum group; "table" and "trivial"
/// need "gamma". A subgroup without an action gives a quantum group only.
Instance parse_instance(const json& j, const std::filesystem::path& base = ".");
Instance load_instance(const std::filesystem::path& file);

}  // namespace rieffel
