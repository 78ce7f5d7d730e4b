#include "wigrep/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wigrep/json_io.hpp"
#include "wigrep/scenarios.hpp"
#include "wigrep/wigner.hpp"

namespace wigrep::cli {

namespace {

using io::json;

struct Globals {
  Tolerance tol{};
  std::uint64_t seed = 20240601;
  std::string out_path;
};

constexpr int kSamples = 16;

json skeleton(const std::string& command, const Globals& g) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["version"] = kVersion;
  r["command"] = command;
  r["seed"] = g.seed;
  r["tolerance"] = {{"abs", g.tol.abs}, {"rel", g.tol.rel}, {"certificate", kCertificateTol}};
  return r;
}

void emit_text(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out_path);
  f << text;
}

void emit(const json& report, const Globals& g, std::ostream& out) { emit_text(report.dump(2) + "\n", g, out); }

IntertwinerOptions intertwiner_options(const Globals& g) {
  IntertwinerOptions o;
  o.tol = g.tol;
  o.seed = g.seed;
  return o;
}

std::vector<std::pair<CVector, CVector>> sample_pairs(Index dim, int count, std::uint64_t seed) {
  const auto xs = sample_unit_vectors(dim, 2 * count, seed);
  std::vector<std::pair<CVector, CVector>> pairs;
  for (int k = 0; k < count; ++k)
    pairs.emplace_back(xs[static_cast<std::size_t>(2 * k)], xs[static_cast<std::size_t>(2 * k + 1)]);
  return pairs;
}

json equivalence_json(const Equivalence& eq) {
  json j;
  j["equivalent"] = eq.equivalent;
  j["space_dim"] = eq.report.space_dim;
  j["basis_residual"] = eq.report.basis_residual;
  j["method"] = to_string(eq.report.method);
  j["draws_used"] = eq.report.draws_used;
  if (eq.witness) {
    j["witness"] = io::to_json(*eq.witness);
    j["witness_residual"] = eq.residual;
    j["witness_unitarity"] = eq.report.witness_unitarity;
  }
  return j;
}

bool equivalence_ok(const Equivalence& eq) {
  bool ok = eq.report.basis_residual <= kCertificateTol;
  if (eq.witness) ok = ok && eq.residual <= kCertificateTol && eq.report.witness_unitarity <= kCertificateTol;
  return ok;
}

json algebra_json(const MatrixAlgebra& alg) {
  return {{"ambient_dim", alg.ambient_dim()}, {"dim", alg.size()}, {"full_matrix_algebra", alg.is_full()}};
}

// Shared by `wigner` and `ssb`: both constructions of W, the corollaries and
// the implementability verdict.
struct Analysis {
  json results;
  bool passed = true;
  bool implementable = false;
};

Analysis analyze(const AlgebraPtr& alg, const State& omega, const Automorphism& alpha, const Globals& g) {
  Analysis a;
  const IntertwinerOptions iopts = intertwiner_options(g);
  const GnsRepresentation rep = gns_construct(alg, omega, g.tol);
  const GnsRepresentation moved = compose_rep(rep, alpha);
  const Index m = rep.hilbert_dim;
  json& r = a.results;
  r["algebra"] = algebra_json(*alg);
  r["hilbert_dim"] = m;

  const WignerUnitary w = wigner_unitary(*alg, omega, alpha, rep, moved, g.tol);
  const double w_identity = max_abs(w.matrix - CMatrix::Identity(w.matrix.rows(), w.matrix.cols()));
  r["W"] = io::to_json(w.matrix);
  r["W_certificates"] = io::to_json(w.certificates);
  r["W_identity_residual"] = w_identity;
  a.passed = a.passed && w.passed();

  const auto xs = sample_unit_vectors(m, kSamples, g.seed);
  const ValidationReport action = verify_state_action(w.matrix, rep, moved, alpha, xs);
  const ValidationReport trans = verify_transition_probabilities(w.matrix, sample_pairs(m, kSamples, g.seed + 1));
  r["state_action"] = io::to_json(action);
  r["transition_probabilities"] = io::to_json(trans);
  a.passed = a.passed && action.passed() && trans.passed();

  const SecondCorollary sc = check_second_corollary(w.matrix, rep, moved, alpha, xs);
  r["second_corollary"] = {{"intertwines", sc.intertwines},
                           {"intertwining_residual", sc.intertwining_residual},
                           {"checks", io::to_json(sc.checks)}};
  a.passed = a.passed && sc.checks.passed();

  const Equivalence eq = is_unitarily_equivalent(rep, moved, iopts);
  r["equivalence"] = equivalence_json(eq);
  const Equivalence imp = is_implementable(rep, alpha, iopts);
  a.implementable = imp.equivalent;
  json impl = equivalence_json(imp);
  impl["implementable"] = imp.equivalent;
  r["implementability"] = impl;
  a.passed = a.passed && equivalence_ok(eq) && equivalence_ok(imp);

  const State pushed = pushforward_state(omega, alpha);
  const GnsRepresentation rep2 = gns_construct(alg, pushed, g.tol);
  const WignerUnitary w2 = wigner_unitary(*alg, omega, alpha, rep, rep2, g.tol);
  const Equivalence eq2 = is_unitarily_equivalent(rep, rep2, iopts);
  r["independent"] = {{"hilbert_dim", rep2.hilbert_dim},
                      {"W", io::to_json(w2.matrix)},
                      {"W_certificates", io::to_json(w2.certificates)},
                      {"equivalence", equivalence_json(eq2)}};
  a.passed = a.passed && w2.passed() && equivalence_ok(eq2);
  return a;
}

int cmd_gns(const std::string& path, bool emit_rep, const Globals& g, std::ostream& out) {
  const json spec = io::load_file(path);
  const AlgebraPtr alg = io::parse_algebra(spec.value("algebra", json()), g.tol);
  const State omega = io::parse_state(spec.value("state", json()), *alg);
  json report = skeleton("gns", g);
  report["inputs"] = spec;
  json& r = report["results"];
  r["algebra"] = algebra_json(*alg);

  const ValidationReport state_checks = check_state(*alg, omega, g.tol);
  r["state_checks"] = io::to_json(state_checks);
  if (!state_checks.passed()) {
    report["passed"] = false;
    emit(report, g, out);
    return kValidationFailure;
  }
  const GnsRepresentation rep = gns_construct(alg, omega, g.tol);
  const ValidationReport checks = verify_gns(*alg, omega, rep, g.tol);
  r["hilbert_dim"] = rep.hilbert_dim;
  r["cyclic_vector"] = io::to_json(rep.cyclic_vector);
  r["checks"] = io::to_json(checks);
  r["max_residual"] = checks.max_residual();
  r["commutant_dim"] = commutant_dim(rep, intertwiner_options(g));
  if (emit_rep) {
    json mats = json::array();
    for (const auto& p : rep.rep) mats.push_back(io::to_json(p));
    r["rep"] = std::move(mats);
    r["quotient"] = io::to_json(rep.quotient);
  }
  report["passed"] = checks.passed();
  emit(report, g, out);
  return checks.passed() ? kOk : kValidationFailure;
}

int cmd_wigner(const std::string& path, const Globals& g, std::ostream& out) {
  const json spec = io::load_file(path);
  const AlgebraPtr alg = io::parse_algebra(spec.value("algebra", json()), g.tol);
  const State omega = io::parse_state(spec.value("state", json()), *alg);
  const Automorphism alpha = io::parse_automorphism(spec.value("automorphism", json()), *alg, g.tol);
  json report = skeleton("wigner", g);
  report["inputs"] = spec;
  const ValidationReport state_checks = check_state(*alg, omega, g.tol);
  if (!state_checks.passed()) {
    report["results"] = {{"state_checks", io::to_json(state_checks)}};
    report["passed"] = false;
    emit(report, g, out);
    return kValidationFailure;
  }
  const Analysis a = analyze(alg, omega, alpha, g);
  report["results"] = a.results;
  report["passed"] = a.passed;
  emit(report, g, out);
  return a.passed ? kOk : kValidationFailure;
}

int cmd_equiv(const std::string& path_a, const std::string& path_b, const Globals& g, std::ostream& out) {
  const json spec_a = io::load_file(path_a);
  const json spec_b = io::load_file(path_b);
  const AlgebraPtr alg_a = io::parse_algebra(spec_a.value("algebra", json()), g.tol);
  const AlgebraPtr alg_b = io::parse_algebra(spec_b.value("algebra", json()), g.tol);
  State omega_b = io::parse_state(spec_b.value("state", json()), *alg_b);
  if (!alg_a->same_basis(*alg_b)) {
    if (!alg_a->same_span(*alg_b)) throw Error(ErrorCode::AlgebraMismatch, "the two specs describe different algebras");
    omega_b = state_from_density(*alg_a, state_density(*alg_b, omega_b));
  }
  const State omega_a = io::parse_state(spec_a.value("state", json()), *alg_a);

  json report = skeleton("equiv", g);
  report["inputs"] = {{"a", spec_a}, {"b", spec_b}};
  const GnsRepresentation rep_a = gns_construct(alg_a, omega_a, g.tol);
  const GnsRepresentation rep_b = gns_construct(alg_a, omega_b, g.tol);
  const Equivalence eq = is_unitarily_equivalent(rep_a, rep_b, intertwiner_options(g));
  json& r = report["results"];
  r["algebra"] = algebra_json(*alg_a);
  r["hilbert_dims"] = {rep_a.hilbert_dim, rep_b.hilbert_dim};
  r["equivalence"] = equivalence_json(eq);
  const bool ok = equivalence_ok(eq);
  report["passed"] = ok;
  emit(report, g, out);
  return ok ? kOk : kValidationFailure;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_sweep(int n_max, int k_local, const std::string& probe, const Globals& g, std::ostream& out) {
  const auto rows = chain_sweep(n_max, k_local, probe.at(0), intertwiner_options(g));
  std::ostringstream csv;
  csv << "n,implementable,implementer_residual,cross_sector_re,cross_sector_im\n";
  bool ok = true;
  for (const auto& row : rows) {
    csv << row.n << ',' << (row.implementable ? "true" : "false") << ',' << format_real(row.implementer_residual)
        << ',' << format_real(row.cross_sector.real()) << ',' << format_real(row.cross_sector.imag()) << '\n';
    ok = ok && row.implementable;
  }
  emit_text(csv.str(), g, out);
  return ok ? kOk : kValidationFailure;
}

int cmd_ssb(const std::string& name, int n, Index d, const Globals& g, std::ostream& out, std::ostream& err) {
  const std::optional<Scenario> sc = find_scenario(name, n, d);
  if (!sc) {
    err << "unknown scenario '" << name << "'; known:";
    for (const auto& s : scenario_names()) err << ' ' << s;
    err << " sweep\n";
    return kUnknownScenario;
  }
  json report = skeleton("ssb", g);
  json inputs = {{"scenario", name}};
  if (name == "ferromagnet") inputs["n"] = n;
  if (name == "elementary_qm") inputs["d"] = d;
  report["inputs"] = inputs;

  const Analysis a = analyze(sc->algebra, sc->state, sc->automorphism, g);
  json results = a.results;
  const bool broken = !a.implementable;
  results["scenario"] = {{"name", sc->name},
                         {"notes", sc->notes},
                         {"expected_broken", sc->expected_broken},
                         {"broken", broken},
                         {"verdict_matches", broken == sc->expected_broken}};
  if (sc->implementer) results["scenario"]["implementer"] = io::to_json(*sc->implementer);
  const bool ok = a.passed && broken == sc->expected_broken;
  report["results"] = results;
  report["passed"] = ok;
  emit(report, g, out);
  return ok ? kOk : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wigrep: GNS representations, Wigner unitaries and symmetry breaking on finite-dimensional *-algebras",
               "wigrep"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol-abs", g.tol.abs, "absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol-rel", g.tol.rel, "relative (nullity) tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random draws and samples")->capture_default_str();
  app.add_option("--out", g.out_path, "write the report here instead of stdout");

  std::string spec_path;
  bool emit_rep = false;
  auto* gns = app.add_subcommand("gns", "GNS construction and verification for {algebra, state}");
  gns->add_option("spec", spec_path, "JSON spec file")->required();
  gns->add_flag("--emit-rep", emit_rep, "include the representation matrices in the report");

  std::string wigner_path;
  auto* wigner = app.add_subcommand("wigner", "Wigner unitary and corollaries for {algebra, state, automorphism}");
  wigner->add_option("spec", wigner_path, "JSON spec file")->required();

  std::string path_a;
  std::string path_b;
  auto* equiv = app.add_subcommand("equiv", "unitary equivalence of the GNS representations of two specs");
  equiv->add_option("a", path_a, "first spec")->required();
  equiv->add_option("b", path_b, "second spec")->required();

  std::string target;
  int n = 2;
  Index d = 2;
  int n_max = 12;
  int k_local = 1;
  std::string probe = "z";
  auto* ssb = app.add_subcommand("ssb", "run a catalog scenario, or `ssb sweep` for the spin-chain sweep");
  ssb->add_option("scenario", target, "two_point_swap | block_swap | elementary_qm | ferromagnet | sweep")->required();
  ssb->add_option("--n", n, "ferromagnet sites (at most 6)")->capture_default_str();
  ssb->add_option("--d", d, "elementary_qm dimension")->capture_default_str();
  ssb->add_option("--n-max", n_max, "sweep: largest chain length (at most 20)")->capture_default_str();
  ssb->add_option("--k-local", k_local, "sweep: probe width")->check(CLI::NonNegativeNumber)->capture_default_str();
  ssb->add_option("--probe", probe, "sweep: probe Pauli axis")->check(CLI::IsMember({"x", "y", "z"}))->capture_default_str();

  std::vector<const char*> argv{"wigrep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*gns) return cmd_gns(spec_path, emit_rep, g, out);
    if (*wigner) return cmd_wigner(wigner_path, g, out);
    if (*equiv) return cmd_equiv(path_a, path_b, g, out);
    if (*ssb) {
      if (target == "sweep") return cmd_sweep(n_max, k_local, probe, g, out);
      return cmd_ssb(target, n, d, g, out, err);
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const io::json::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::CapExceeded: return kCapExceeded;
      case ErrorCode::AlgebraMismatch: return kAlgebraMismatch;
      default: return kValidationFailure;
    }
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kParseError;
}

}  // namespace wigrep::cli
