#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rieffel/instance.hpp"
#include "rieffel/relations.hpp"

namespace rieffel {

inline constexpr const char* kEngineVersion = "0.1.0";

struct RunSettings {
  double tol = 1e-9;
  ProbeSettings probes;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  double residual = 0.0;
  double elapsed = 0.0;  // seconds
};

struct Report {
  std::string instance;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  nlohmann::json data = nlohmann::json::object();

  bool pass() const;
  /// Records a residual-valued check: passes iff residual <= tol. The body is timed.
  void check(const std::string& name, double tol, const std::function<double()>& body);
  /// Records a yes/no check; residual is 0 when it holds and 1 otherwise.
  void expect(const std::string& name, const std::function<bool()>& body);
  nlohmann::json to_json() const;
  void print(std::ostream& os) const;
};

/// Crossed product, twisted dual action, Landstad algebra and the structural
/// checks around them; the exact sequence when the instance has an ideal.
Report run_deform(const Instance& in, const RunSettings& s);
/// W, pentagon, manageability, comultiplication, dual and Haar checks.
Report run_quantum_group(const Instance& in, const RunSettings& s);
Report run_relations(const NormalPair& pair, const RunSettings& s);
/// Every pipeline the instance supports, merged into one report.
Report run_instance(const Instance& in, const RunSettings& s);

/// One acceptance criterion of the full verification suite.
struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = true;
  double residual = 0.0;
  double elapsed = 0.0;
  std::string detail;
};

std::vector<CriterionResult> verify_suite(const RunSettings& s);
CriterionResult run_criterion(int number, const RunSettings& s);
inline constexpr int kCriterionCount = 14;

nlohmann::json criteria_to_json(const std::vector<CriterionResult>& results, const RunSettings& s);

}  // namespace rieffel
