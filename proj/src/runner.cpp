#include "rieffel/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rieffel/errors.hpp"

namespace rieffel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

std::vector<int> blocks_of(const StarAlgebra& a) { return block_decomposition(a).sizes; }

}  // namespace

// ---------------------------------------------------------------------------

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void Report::check(const std::string& name, double tol, const std::function<double()>& body) {
  const auto t0 = Clock::now();
  CheckResult c{name, false, 1.0, 0.0};
  try {
    c.residual = body();
    c.pass = std::isfinite(c.residual) && c.residual <= tol;
    if (!std::isfinite(c.residual)) c.residual = 1.0;
  } catch (const Error& e) {
    data["errors"][name] = e.what();
  }
  c.elapsed = seconds_since(t0);
  checks.push_back(c);
}

void Report::expect(const std::string& name, const std::function<bool()>& body) {
  const auto t0 = Clock::now();
  CheckResult c{name, false, 1.0, 0.0};
  try {
    c.pass = body();
    c.residual = c.pass ? 0.0 : 1.0;
  } catch (const Error& e) {
    data["errors"][name] = e.what();
  }
  c.elapsed = seconds_since(t0);
  checks.push_back(c);
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["engine_version"] = kEngineVersion;
  j["instance"] = instance;
  j["seed"] = seed;
  j["pass"] = pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"elapsed", c.elapsed}});
  j["data"] = data;
  return j;
}

void Report::print(std::ostream& os) const {
  os << "instance " << instance << " (seed " << seed << ")\n";
  std::size_t w = 5;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  for (const auto& c : checks)
    os << "  " << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << (c.pass ? "pass" : "FAIL") << "  "
       << fmt(c.residual) << "  " << std::fixed << std::setprecision(3) << c.elapsed << "s\n"
       << std::defaultfloat;
  os << (pass() ? "all checks passed" : "some checks failed") << "\n";
}

// ---------------------------------------------------------------------------

Report run_deform(const Instance& in, const RunSettings& s) {
  if (!in.deformation) throw ValidationError("instance " + in.id + " has no action to deform");
  const DeformationData& dd = *in.deformation;
  const double tol = s.tol;
  Report r;
  r.instance = in.id;
  r.seed = s.probes.seed;

  r.expect("cocycle_identity", [&] { return verify_cocycle(dd.psi).pass; });
  r.expect("star_identity", [&] { return !check_star_identity(dd.psi).has_value(); });
  r.expect("u_cocycle_identity_exact", [&] { return !check_u_cocycle_identity(dd.psi).has_value(); });

  const GammaProduct cp = crossed_product(dd.ds);
  r.check("crossed_product_relations", tol, [&] {
    return std::max({cp.defining_relation_residual(), cp.action_homomorphism_residual(), cp.covariance_residual()});
  });
  r.expect("dual_embedding_injective", [&] { return cp.dual_embedding_rank() == cp.gamma().order(); });
  r.check("landstad_round_trip", tol,
          [&] { return subspace_distance(landstad_algebra(cp).basis(), pi_image(cp).basis()); });
  r.check("u_cocycle", tol, [&] { return u_cocycle_residual(cp, dd.psi); });

  std::optional<TwistedSystem> ts;
  r.expect("dimension_preserved", [&] {
    ts = deform(dd);
    return true;
  });
  r.data["dims"] = {{"A", dd.ds.algebra().dim()}, {"B", cp.algebra().dim()}};
  if (!ts) return r;
  r.data["dims"]["A_psi"] = ts->a_psi.dim();

  r.check("deformed_gamma_product", tol, [&] {
    return std::max(ts->gp.defining_relation_residual(), ts->gp.action_homomorphism_residual());
  });
  r.check("landstad_routes", tol, [&] {
    return subspace_distance(ts->a_psi.basis(), landstad_nullspace(ts->gp).basis());
  });
  r.check("rho_psi_invariance", tol, [&] { return ts->invariance_residual(); });
  r.check("generated_by_a_psi_and_lambda", tol, [&] { return verify_eqgam(*ts, tol).distance; });

  const auto before = blocks_of(dd.ds.algebra());
  const auto after = blocks_of(ts->a_psi);
  r.data["blocks_before"] = before;
  r.data["blocks"] = after;
  r.data["commutative"] = ts->a_psi.commutator_norm(s.probes.seed) <= 1e-8;
  const KTheoryNote k = k_theory_note(*ts);
  r.data["k_theory"] = {{"k0_rank_before", k.blocks_before}, {"k0_rank_after", k.blocks_after}, {"note", k.note}};
  r.data["cohomologically_trivial"] = cohomologous(TwoCocycle::trivial(dd.psi.group()), dd.psi).cohomologous;
  r.data["landstad_note"] =
      "Landstad algebra = fixed points of the dual action; continuity and f x g conditions hold automatically in "
      "finite dimension";

  if (in.ideal) {
    ExactSequenceReport es;
    r.check("exact_sequence", tol, [&] {
      es = deform_exact_sequence(dd.ds, *in.ideal, dd.psi, tol);
      return std::max(es.kernel_distance, es.image_distance);
    });
    r.expect("exact_sequence_dimensions", [&] { return es.ideal_dim + es.quotient_dim == es.algebra_dim; });
    r.data["exact_sequence"] = {{"dims", {es.ideal_dim, es.algebra_dim, es.quotient_dim}},
                                {"blocks", {es.ideal_blocks, es.algebra_blocks, es.quotient_blocks}}};
  }
  return r;
}

Report run_quantum_group(const Instance& in, const RunSettings& s) {
  if (!in.quantum) throw ValidationError("instance " + in.id + " has no subgroup for a quantum group");
  const QuantumSpec& qs = *in.quantum;
  const double tol = s.tol;
  const ProbeSettings& ps = s.probes;
  Report r;
  r.instance = in.id;
  r.seed = ps.seed;

  const GroupQuantumData q(qs.group, qs.iota, qs.psi);
  const int n = q.n();
  r.check("spectral_projections", tol, [&] { return std::max(q.projection_residual(), q.commutation_residual()); });
  const MultiplicativeUnitaryData m = build_W(q);
  r.check("kac_takesaki", tol, [&] {
    return std::max(kac_takesaki_comultiplication_residual(q.group(), m.V), pentagon_residual(m.V, n, ps));
  });
  r.check("unitarity", tol, [&] { return m.unitarity_residual; });
  double pentagon = 0.0;
  r.check("pentagon", tol, [&] { return pentagon = pentagon_residual(m.W, n, ps); });
  r.check("covariance", tol, [&] { return covariance_residual(q, m); });
  r.check("leg_structure", tol, [&] { return leg_residual(q, m); });

  ManageabilityReport man;
  r.check("manageability", tol, [&] {
    man = manageability_check(m, tol, 100, ps.seed);
    return man.inner_residual;
  });
  r.check("adjoint_slices", tol, [&] { return man.adjoint_slice_residual; });

  const StarAlgebra a = slice_algebra(m);
  r.expect("slice_dimension", [&] { return a.dim() == n; });
  std::optional<TwistedSystem> ts;
  r.check("slices_match_deformation", tol, [&] {
    ts = left_right_deformation(q);
    return subspace_distance(a.basis(), canonical_image(*ts).basis());
  });
  if (ts) {
    r.check("comultiplication_pictures", tol, [&] { return comultiplication_picture_residual(q, m, *ts); });
    CorepReport cr;
    r.check("corepresentation_canonical", tol, [&] {
      cr = corepresentation_check(q, m, *ts, ps);
      return cr.canonical_residual;
    });
    r.check("corepresentation_invariance", tol, [&] { return cr.invariance_residual; });
    r.check("corepresentation_identity", std::max(tol, 1e-8), [&] { return cr.corep_residual; });
  }
  r.check("coassociativity", tol, [&] { return coassociativity_residual(m, a, ps); });
  const auto mamb = std::dynamic_pointer_cast<const MatrixAmbient>(a.ambient());
  r.check("comultiplication_in_tensor_square", tol, [&] {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
      worst = std::max(worst, tensor_residual(a, comultiply(m, mamb->matrix(a.element(i)))));
    return worst;
  });

  DualReport d;
  r.check("dual_span", tol, [&] {
    d = dual_quantum_group(q, m, ps);
    return d.span_distance;
  });
  r.expect("dual_dimension", [&] { return d.dim == n; });
  r.check("dual_coproduct_implemented", tol, [&] { return d.implementation_residual; });
  r.check("dual_coassociativity", tol, [&] { return d.coassoc_residual; });
  r.check("dual_antipode", tol, [&] { return std::max(d.antipode_residual, d.antipode_range_residual); });

  HaarReport h;
  r.check("quantization_multiplicative", tol, [&] {
    h = haar_check(q, m, a, 50, ps.seed);
    return h.beauty_residual;
  });
  r.check("haar_trace", tol, [&] { return h.trace_residual; });
  r.check("haar_invariance", tol, [&] { return std::max(h.left_invariance, h.right_invariance); });
  r.expect("haar_faithful", [&] { return h.min_gram_eigenvalue > tol; });
  r.check("convolution", tol, [&] { return h.convolution_residual; });

  const double flip = flip_distance(m, a);
  r.data["pentagon_residual"] = pentagon;
  r.data["manageable"] = {{"pass", man.pass}, {"residual", std::max(man.inner_residual, man.adjoint_slice_residual)},
                          {"quadruples", man.quadruples}};
  r.data["slice_dim"] = a.dim();
  r.data["blocks"] = blocks_of(a);
  r.data["commutative"] = a.commutator_norm(ps.seed) <= 1e-8;
  r.data["cocommutative"] = {{"value", flip <= tol}, {"flip_distance", flip}};
  r.data["haar"] = {{"trace_residual", h.trace_residual},
                    {"invariance_residual", std::max(h.left_invariance, h.right_invariance)},
                    {"min_gram_eigenvalue", h.min_gram_eigenvalue},
                    {"h_one", h.h_one},
                    {"convolution_residual", h.convolution_residual},
                    {"convolution_residual_adjoint_form", h.convolution_adjoint_residual}};
  r.data["dual"] = {{"dim", d.dim}, {"blocks", d.blocks}, {"coassoc_residual", d.coassoc_residual}};
  r.data["modular_function"] = "identically 1 (finite group); left shifts carry no modular factor";
  r.data["evaluation"] = n * n * n < ps.dense_limit ? "dense" : "probes";
  return r;
}

Report run_relations(const NormalPair& pair, const RunSettings& s) {
  Report r;
  r.instance = "relations";
  r.seed = s.probes.seed;
  Def1Report d1;
  Def2Report d2;
  r.check("polar_form", s.tol, [&] {
    d1 = check_def1(pair, s.tol);
    return d1.residual();
  });
  r.check("z_transform_form", s.tol, [&] {
    d2 = check_def2(pair, s.tol);
    return d2.residual();
  });
  r.expect("forms_agree", [&] { return d1.pass == d2.pass; });
  r.data["p"] = pair.p;
  r.data["q"] = pair.q;
  r.data["polar"] = {{"strong_commutation", d1.strong_commutation},
                     {"phase_commutation", d1.phase_commutation},
                     {"scaling_r", d1.scaling_r},
                     {"scaling_s", d1.scaling_s}};
  r.data["z_transform"] = {{"first", d2.first}, {"second", d2.second}};
  return r;
}

Report run_instance(const Instance& in, const RunSettings& s) {
  Report r;
  r.instance = in.id;
  r.seed = s.probes.seed;
  auto merge = [&](const Report& part, const std::string& prefix) {
    for (auto c : part.checks) {
      c.name = prefix + "." + c.name;
      r.checks.push_back(c);
    }
    r.data[prefix] = part.data;
  };
  if (in.deformation) merge(run_deform(in, s), "deform");
  if (in.quantum) merge(run_quantum_group(in, s), "quantum_group");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Criterion {
  CriterionResult res;
  double tol;

  explicit Criterion(int number, std::string title, double t) : tol(t) {
    res.number = number;
    res.title = std::move(title);
  }
  void residual(double x, const std::string& what) {
    res.residual = std::max(res.residual, x);
    if (!(x <= tol)) fail(what + " residual " + fmt(x));
  }
  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    res.pass = false;
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += what;
  }
  void note(const std::string& what) {
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += what;
  }
};

std::string blocks_string(const std::vector<int>& b) { return format_blocks(b); }

ProbeSettings probe_only(const ProbeSettings& ps) {
  ProbeSettings out = ps;
  out.dense_limit = std::min(ps.dense_limit, 4096);
  return out;
}

void criterion_cocycles(Criterion& c) {
  const FiniteAbelianGroup z22({2, 2}), z44({4, 4}), z24({2, 4});
  std::vector<TwoCocycle> shipped = {TwoCocycle::trivial(z22), catalog_instance("z2sq-nondeg").deformation->psi,
                                     TwoCocycle::trivial(z44), catalog_instance("z4sq-nondeg").deformation->psi,
                                     TwoCocycle::trivial(z24), catalog_instance("z2xz4-random").deformation->psi};
  const std::size_t base = shipped.size();
  for (std::size_t i = 0; i < base; ++i) {
    shipped.push_back(shipped[i].tilde());
    shipped.push_back(shipped[i].flip());
  }
  int failures = 0;
  for (const auto& psi : shipped) {
    if (!verify_cocycle(psi).pass) ++failures;
    if (check_star_identity(psi)) ++failures;
    if (check_u_cocycle_identity(psi)) ++failures;
  }
  c.residual(failures, std::to_string(failures) + " exact identity failures");
  c.note(std::to_string(shipped.size()) + " cocycles, exact phase arithmetic");
}

void criterion_round_trip(Criterion& c) {
  for (const char* id : {"z2-trivial-scalar", "z2-translation", "m2-diag", "z2-first-coordinate", "two-copy-z2sq"}) {
    const GammaProduct cp = crossed_product(catalog_instance(id).deformation->ds);
    c.residual(subspace_distance(landstad_algebra(cp).basis(), pi_image(cp).basis()), id);
  }
}

void criterion_torus(Criterion& c) {
  struct Case {
    const char* id;
    std::vector<int> expected;
  };
  for (const Case& k : {Case{"z2sq-nondeg", {2}}, Case{"z4sq-nondeg", {4}}}) {
    const Instance in = catalog_instance(k.id);
    const TwistedSystem ts = deform(*in.deformation);
    const auto blocks = blocks_of(ts.a_psi);
    const TwistedGroupAlgebra oracle = twisted_group_algebra(in.deformation->psi);
    c.require(blocks == k.expected, std::string(k.id) + " blocks " + blocks_string(blocks));
    c.require(oracle.blocks == blocks, std::string(k.id) + " oracle blocks " + blocks_string(oracle.blocks));
    // commutation phases of the weight vectors against those of the oracle's regular representation
    const Eigen::MatrixXcd phases = commutation_phases(ts);
    const int m = static_cast<int>(oracle.t.size());
    double worst = 0.0;
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu) {
        const Mat ab = oracle.t[mu] * oracle.t[nu], ba = oracle.t[nu] * oracle.t[mu];
        const cplx k2 = (ba.adjoint() * ab).trace() / (ba.adjoint() * ba).trace();
        worst = std::max(worst, std::abs(phases(mu, nu) - k2));
      }
    c.residual(worst, std::string(k.id) + " commutation phases");
    c.note(std::string(k.id) + " " + blocks_string(blocks));
  }
}

void criterion_generation(Criterion& c) {
  int count = 0;
  for (const auto& e : catalog()) {
    const Instance in = catalog_instance(e.id);
    if (!in.deformation) continue;
    c.residual(verify_eqgam(deform(*in.deformation), c.tol).distance, e.id);
    ++count;
  }
  c.note(std::to_string(count) + " instances");
}

void criterion_coboundaries(Criterion& c) {
  const FiniteAbelianGroup z2({2}), z22({2, 2}), z24({2, 4});
  std::vector<Phase> f1 = {Phase(0, 1), Phase(1, 4)};
  std::vector<Phase> f2 = {Phase(0, 1), Phase(1, 4), Phase(3, 4), Phase(1, 2)};
  std::vector<Phase> f3(z24.order());
  for (int x = 1; x < z24.order(); ++x) f3[x] = Phase((3 * x * x + x) % 8, 8);
  c.residual(coboundary_transport(translation_system(z2), f1, c.tol).distance, "Z2 coboundary");
  c.residual(coboundary_transport(translation_system(z22), f2, c.tol).distance, "Z2^2 coboundary");
  c.residual(coboundary_transport(translation_system(z24), f3, c.tol).distance, "Z2 x Z4 coboundary");

  for (const char* id : {"z2sq-nondeg", "z4sq-nondeg", "z2xz4-random"}) {
    const Instance in = catalog_instance(id);
    const auto& dd = *in.deformation;
    std::vector<Phase> f(dd.psi.group().order());
    for (int x = 1; x < static_cast<int>(f.size()); ++x) f[x] = Phase(x % 5, 5);
    const TwoCocycle psi2 = dd.psi.multiply(coboundary(dd.psi.group(), f));
    c.require(cohomologous(dd.psi, psi2).cohomologous, std::string(id) + " not detected as cohomologous");
    const auto b1 = blocks_of(deform(dd).a_psi);
    const auto b2 = blocks_of(deform(DeformationData(dd.ds, psi2)).a_psi);
    c.require(b1 == b2, std::string(id) + " blocks " + blocks_string(b1) + " vs " + blocks_string(b2));
  }
}

void criterion_pentagon(Criterion& c, const RunSettings& s) {
  const auto d4 = catalog_instance("d4-kp").quantum;
  const GroupQuantumData q4(d4->group, d4->iota, d4->psi);
  ProbeSettings dense = s.probes;
  dense.dense_limit = std::max(dense.dense_limit, 513);
  c.residual(pentagon_residual(build_W(q4).W, q4.n(), dense), "d4-kp pentagon");

  const auto d8 = catalog_instance("d8-kp").quantum;
  const GroupQuantumData q8(d8->group, d8->iota, d8->psi);
  const double r8 = pentagon_residual(build_W(q8).W, q8.n(), probe_only(s.probes));
  if (!(r8 <= 1e-8)) c.fail("d8-kp probed pentagon residual " + fmt(r8));
  c.res.residual = std::max(c.res.residual, r8);
  c.note("d8-kp: " + std::to_string(s.probes.probes) + " probes on dimension 4096");
}

struct D4Data {
  GroupQuantumData q;
  MultiplicativeUnitaryData m;
  explicit D4Data(const char* id)
      : q(catalog_instance(id).quantum->group, catalog_instance(id).quantum->iota, catalog_instance(id).quantum->psi),
        m(build_W(q)) {}
};

void criterion_manageability(Criterion& c, const RunSettings& s) {
  const D4Data d("d4-kp");
  const ManageabilityReport r = manageability_check(d.m, c.tol, 100, s.probes.seed);
  c.residual(r.inner_residual, "entry identity");
  c.residual(r.adjoint_slice_residual, "adjoint-slice identity");
  c.note(std::to_string(r.quadruples) + " quadruples, " + std::to_string(r.samples) + " sampled pairs");
}

void criterion_slices(Criterion& c) {
  for (const char* id : {"d4-kp", "z2sq-nondeg"}) {
    const D4Data d(id);
    const StarAlgebra a = slice_algebra(d.m);
    const StarAlgebra img = canonical_image(left_right_deformation(d.q));
    c.residual(subspace_distance(a.basis(), img.basis()), id);
    c.note(std::string(id) + " slice blocks " + blocks_string(blocks_of(a)));
  }
}

void criterion_comultiplication(Criterion& c, const RunSettings& s) {
  for (const char* id : {"d4-kp", "z2sq-nondeg"}) {
    const D4Data d(id);
    const StarAlgebra a = slice_algebra(d.m);
    const TwistedSystem ts = left_right_deformation(d.q);
    c.residual(comultiplication_picture_residual(d.q, d.m, ts), std::string(id) + " comultiplication pictures");
    c.residual(coassociativity_residual(d.m, a, s.probes), std::string(id) + " coassociativity");
    const CorepReport cr = corepresentation_check(d.q, d.m, ts, s.probes);
    c.residual(std::max(cr.canonical_residual, cr.invariance_residual), std::string(id) + " corepresentation entries");
    if (!(cr.corep_residual <= 1e-8)) c.fail(std::string(id) + " corepresentation residual " + fmt(cr.corep_residual));
    c.res.residual = std::max(c.res.residual, cr.corep_residual);
  }
}

void criterion_dual(Criterion& c, const RunSettings& s) {
  const D4Data d("d4-kp");
  const DualReport r = dual_quantum_group(d.q, d.m, s.probes, 100);
  c.residual(r.span_distance, "span{R_g}");
  c.require(r.dim == d.q.n(), "dual dimension " + std::to_string(r.dim));
  c.residual(r.coassoc_residual, "dual coassociativity");
  c.residual(r.antipode_residual, "antipode antimultiplicativity");
  c.residual(r.antipode_range_residual, "antipode range");
  c.residual(r.implementation_residual, "dual coproduct implementation");
  c.require(r.blocks == std::vector<int>{1, 1, 1, 1, 2}, "dual blocks " + blocks_string(r.blocks));
  c.note("dual blocks " + blocks_string(r.blocks));
}

void criterion_haar(Criterion& c, const RunSettings& s) {
  const D4Data d("d4-kp");
  const StarAlgebra a = slice_algebra(d.m);
  const HaarReport h = haar_check(d.q, d.m, a, 50, s.probes.seed);
  c.require(h.q_rank == d.q.n(), "quantization not injective");
  c.residual(h.beauty_residual, "Q(Q(f)h) = Q(f)Q(h)");
  c.residual(h.trace_residual, "trace");
  c.residual(std::max(h.left_invariance, h.right_invariance), "invariance");
  c.require(h.min_gram_eigenvalue > 1e-9, "Gram eigenvalue " + fmt(h.min_gram_eigenvalue));
  c.residual(h.convolution_residual, "convolution");
  c.note("min Gram eigenvalue " + fmt(h.min_gram_eigenvalue));
}

void criterion_exact(Criterion& c) {
  const Instance in = catalog_instance("two-copy-z2sq");
  const ExactSequenceReport r = deform_exact_sequence(in.deformation->ds, *in.ideal, in.deformation->psi, c.tol);
  c.require(r.ideal_dim + r.quotient_dim == r.algebra_dim,
            "dims " + std::to_string(r.ideal_dim) + "+" + std::to_string(r.quotient_dim) +
                " != " + std::to_string(r.algebra_dim));
  c.residual(r.kernel_distance, "kernel");
  c.residual(r.image_distance, "image");
  c.note("dims " + std::to_string(r.ideal_dim) + "+" + std::to_string(r.quotient_dim) + "=" +
         std::to_string(r.algebra_dim) + ", blocks " + blocks_string(r.algebra_blocks));
}

void criterion_relations(Criterion& c, const RunSettings& s) {
  const AgreementReport r = definition_agreement(random_pairs(200, s.probes.seed), 1e-8);
  c.residual(r.disagreements, std::to_string(r.disagreements) + " disagreements");
  c.note(std::to_string(r.pairs) + " pairs, " + std::to_string(r.passing) + " accepted by both");
}

void criterion_ktheory(Criterion& c) {
  const KTheoryNote k = k_theory_note(deform(*catalog_instance("z2sq-nondeg").deformation));
  c.require(k.blocks_before == 4 && k.blocks_after == 1,
            "block count " + std::to_string(k.blocks_before) + " -> " + std::to_string(k.blocks_after));
  c.require(k.note.find("R^n") != std::string::npos, "note missing");
  c.note("block count " + std::to_string(k.blocks_before) + " -> " + std::to_string(k.blocks_after));
}

}  // namespace

CriterionResult run_criterion(int number, const RunSettings& s) {
  static const char* titles[kCriterionCount] = {
      "cocycle layer exact",
      "crossed product round trip",
      "noncommutative torus blocks",
      "A^Psi and lambda generate B",
      "coboundary transport and cohomology invariance",
      "pentagon equation",
      "manageability",
      "slice algebra equals deformed algebra",
      "comultiplication, coassociativity, corepresentation",
      "dual quantum group",
      "Haar state",
      "exact sequence",
      "relations: two forms agree",
      "K-theory counterexample",
  };
  if (number < 1 || number > kCriterionCount) throw ValidationError("no criterion " + std::to_string(number));
  const double tol = (number == 13) ? 1e-8 : std::min(s.tol, 1e-9);
  Criterion c(number, titles[number - 1], tol);
  const double limit[kCriterionCount] = {1, 5, 10, 0, 0, 30, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto t0 = Clock::now();
  try {
    switch (number) {
      case 1: criterion_cocycles(c); break;
      case 2: criterion_round_trip(c); break;
      case 3: criterion_torus(c); break;
      case 4: criterion_generation(c); break;
      case 5: criterion_coboundaries(c); break;
      case 6: criterion_pentagon(c, s); break;
      case 7: criterion_manageability(c, s); break;
      case 8: criterion_slices(c); break;
      case 9: criterion_comultiplication(c, s); break;
      case 10: criterion_dual(c, s); break;
      case 11: criterion_haar(c, s); break;
      case 12: criterion_exact(c); break;
      case 13: criterion_relations(c, s); break;
      case 14: criterion_ktheory(c); break;
    }
  } catch (const Error& e) {
    c.fail(std::string("error: ") + e.what());
  }
  c.res.elapsed = seconds_since(t0);
  if (limit[number - 1] > 0 && c.res.elapsed > limit[number - 1])
    c.fail("runtime " + fmt(c.res.elapsed) + "s over " + std::to_string(static_cast<int>(limit[number - 1])) + "s");
  return c.res;
}

std::vector<CriterionResult> verify_suite(const RunSettings& s) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, s));
  return out;
}

nlohmann::json criteria_to_json(const std::vector<CriterionResult>& results, const RunSettings& s) {
  nlohmann::json j;
  j["engine_version"] = kEngineVersion;
  j["seed"] = s.probes.seed;
  j["tol"] = s.tol;
  bool all = true;
  j["checks"] = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    j["checks"].push_back({{"name", "criterion_" + std::to_string(r.number)},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"residual", r.residual},
                           {"elapsed", r.elapsed},
                           {"detail", r.detail}});
  }
  j["pass"] = all;
  return j;
}

}  // namespace rieffel
