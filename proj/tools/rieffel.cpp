#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rieffel/errors.hpp"
#include "rieffel/runner.hpp"

namespace {

using namespace rieffel;

struct Options {
  double tol = 1e-9;
  int probes = 16;
  std::uint64_t seed = 0;
  int dense_limit = 4096;
  std::string report;
  bool json_stdout = false;
};

RunSettings settings(const Options& o) {
  if (o.tol <= 0.0) throw ValidationError("--tol must be positive");
  if (o.probes < 1) throw ValidationError("--probes must be at least 1");
  RunSettings s;
  s.tol = o.tol;
  s.probes.probes = o.probes;
  s.probes.seed = o.seed;
  s.probes.dense_limit = o.dense_limit;
  return s;
}

/// A catalog id, or a path to an instance file.
Instance resolve_instance(const std::string& ref) {
  if (std::filesystem::exists(ref)) return load_instance(ref);
  for (const auto& e : catalog())
    if (e.id == ref) return catalog_instance(ref);
  throw ValidationError("'" + ref + "' is neither a file nor a catalog instance");
}

void emit(const nlohmann::json& j, const Options& o) {
  if (o.json_stdout) std::cout << j.dump(2) << "\n";
  if (o.report.empty()) return;
  std::ofstream f(o.report);
  if (!f) throw ValidationError("cannot write " + o.report);
  f << j.dump(2) << "\n";
}

int finish(const Report& r, const Options& o) {
  if (!o.json_stdout) r.print(std::cout);
  emit(r.to_json(), o);
  return r.pass() ? 0 : 1;
}

void add_common(CLI::App* app, Options& o, bool probes) {
  app->add_option("--tol", o.tol, "pass threshold for residuals")->capture_default_str();
  if (probes) {
    app->add_option("--probes", o.probes, "random probes for matrix-free identities")->capture_default_str();
    app->add_option("--seed", o.seed, "seed for every randomized check")->capture_default_str();
    app->add_option("--dense-limit", o.dense_limit, "evaluate identities densely below this dimension")
        ->capture_default_str();
  }
  app->add_option("--report", o.report, "write the JSON report to this path");
  app->add_flag("--json", o.json_stdout, "print the JSON report instead of the table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformation of finite-dimensional C*-algebras by 2-cocycles and the resulting finite quantum groups"};
  app.require_subcommand(1);
  Options o;
  std::string ref;

  auto* deform_cmd = app.add_subcommand("deform", "deform an action by a cocycle and check the result");
  deform_cmd->add_option("instance", ref, "catalog id or instance file")->required();
  add_common(deform_cmd, o, true);

  auto* qg_cmd = app.add_subcommand("quantum-group", "build W for G, Gamma, Psi and verify the quantum group");
  qg_cmd->add_option("instance", ref, "catalog id or instance file")->required();
  add_common(qg_cmd, o, true);

  std::string r_file, s_file;
  double p = 1.0, q = 1.0;
  auto* rel_cmd = app.add_subcommand("relations", "check (p,q)-commutation of two normal matrices");
  rel_cmd->add_option("R", r_file, "JSON matrix file for R")->required();
  rel_cmd->add_option("S", s_file, "JSON matrix file for S")->required();
  rel_cmd->add_option("-p,--p", p, "p > 0")->capture_default_str();
  rel_cmd->add_option("-q,--q", q, "q > 0")->capture_default_str();
  add_common(rel_cmd, o, false);

  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
  verify_cmd->add_option("--criterion", only, "run only these criteria (1-14)");
  add_common(verify_cmd, o, true);

  auto* cat_cmd = app.add_subcommand("catalog", "list built-in instances");
  cat_cmd->add_flag("--json", o.json_stdout, "print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cat_cmd) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& e : catalog()) {
        if (o.json_stdout)
          j.push_back({{"id", e.id}, {"description", e.description}});
        else
          std::cout << e.id << "  " << e.description << "\n";
      }
      if (o.json_stdout) std::cout << j.dump(2) << "\n";
      return 0;
    }
    const RunSettings s = settings(o);
    if (*deform_cmd) return finish(run_deform(resolve_instance(ref), s), o);
    if (*qg_cmd) return finish(run_quantum_group(resolve_instance(ref), s), o);
    if (*rel_cmd) {
      const Mat r = parse_matrix(resolve(r_file, "."));
      const Mat sm = parse_matrix(resolve(s_file, "."));
      return finish(run_relations(NormalPair(r, sm, p, q), s), o);
    }
    if (*verify_cmd) {
      std::vector<CriterionResult> results;
      if (only.empty()) {
        for (int i = 1; i <= kCriterionCount; ++i) {
          results.push_back(run_criterion(i, s));
          if (!o.json_stdout) {
            const auto& c = results.back();
            std::cout << "criterion " << c.number << " " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                      << c.elapsed << "s) " << c.detail << "\n";
          }
        }
      } else {
        for (int i : only) results.push_back(run_criterion(i, s));
        if (!o.json_stdout)
          for (const auto& c : results)
            std::cout << "criterion " << c.number << " " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                      << c.elapsed << "s) " << c.detail << "\n";
      }
      const auto j = criteria_to_json(results, s);
      emit(j, o);
      return j["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
