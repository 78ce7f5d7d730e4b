#include <doctest.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wigrep/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wigrep::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) { return std::string(WIGREP_SPEC_DIR) + "/" + name + ".json"; }

std::string write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("wigrep_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

double entry_re(const json& m, int r, int c) { return m[r][c][0].get<double>(); }
double entry_im(const json& m, int r, int c) { return m[r][c][1].get<double>(); }

bool all_certificates_below(const json& checks, double bound) {
  for (const auto& c : checks)
    if (!(c["residual"].get<double>() < bound) || !c["passed"].get<bool>()) return false;
  return true;
}

}  // namespace

TEST_CASE("gns command") {
  const Result two = run({"gns", spec("two_point_swap")});
  REQUIRE(two.code == 0);
  const json r = two.report();
  CHECK(r["command"] == "gns");
  CHECK(r["passed"] == true);
  CHECK(r["results"]["hilbert_dim"] == 1);
  CHECK(r["schema_version"] == wigrep::cli::kSchemaVersion);

  const Result trace = run({"gns", spec("m2_tracial")});
  REQUIRE(trace.code == 0);
  CHECK(trace.report()["results"]["hilbert_dim"] == 4);
  CHECK(trace.report()["results"]["commutant_dim"] == 4);

  const Result with_rep = run({"gns", "--emit-rep", spec("m2_pure")});
  REQUIRE(with_rep.code == 0);
  CHECK(with_rep.report()["results"]["rep"].size() == 4);
  CHECK(with_rep.report()["results"]["hilbert_dim"] == 2);
}

TEST_CASE("malformed input exits with 2") {
  const Result bad = run({"gns", spec("malformed_complex")});
  CHECK(bad.code == wigrep::cli::kParseError);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"gns", "/nonexistent/spec.json"}).code == wigrep::cli::kParseError);
  CHECK(run({"frobnicate"}).code == wigrep::cli::kParseError);
  CHECK(run({"--tol-abs", "-1", "gns", spec("m2_pure")}).code == wigrep::cli::kParseError);

  std::ofstream(std::filesystem::temp_directory_path() / "wigrep_test_truncated.json") << "{\"algebra\": ";
  CHECK(run({"gns", (std::filesystem::temp_directory_path() / "wigrep_test_truncated.json").string()}).code ==
        wigrep::cli::kParseError);
}

TEST_CASE("invalid states fail validation with 3") {
  const json s = {{"algebra", {{"ambient_dim", 2}, {"generators", json::array()}}},
                  {"state", {{"values", json::array({json::array({2.0, 0.0})})}}}};
  const Result r = run({"gns", write_temp("unnormalized", s)});
  CHECK(r.code == wigrep::cli::kValidationFailure);
  CHECK(r.report()["passed"] == false);
}

TEST_CASE("wigner command") {
  const Result id = run({"wigner", spec("m2_identity")});
  REQUIRE(id.code == 0);
  const json r = id.report()["results"];
  CHECK(r["W_identity_residual"].get<double>() < 1e-10);
  CHECK(all_certificates_below(r["W_certificates"], 1e-10));
  CHECK(all_certificates_below(r["independent"]["W_certificates"], 1e-10));
  CHECK(r["implementability"]["implementable"] == true);

  const Result two = run({"wigner", spec("two_point_swap")});
  REQUIRE(two.code == 0);
  const json t = two.report()["results"];
  CHECK(t["W"].size() == 1);
  CHECK(entry_re(t["W"], 0, 0) == doctest::Approx(1.0));
  CHECK(entry_re(t["independent"]["W"], 0, 0) == doctest::Approx(1.0));
  CHECK(t["equivalence"]["equivalent"] == false);
  CHECK(t["equivalence"]["space_dim"] == 0);
  CHECK(t["independent"]["equivalence"]["equivalent"] == false);
  CHECK(t["implementability"]["implementable"] == false);
  CHECK(t["second_corollary"]["intertwines"] == false);
  CHECK(t["second_corollary"]["intertwining_residual"].get<double>() > 0.5);

  const Result qm = run({"wigner", spec("elementary_qm_sz")});
  REQUIRE(qm.code == 0);
  const json q = qm.report()["results"];
  CHECK(q["W_identity_residual"].get<double>() < 1e-9);
  const json v = q["implementability"]["witness"];
  // V ~ sigma_z up to a phase: opposite diagonal entries, zero off-diagonal
  const std::complex<double> v00(entry_re(v, 0, 0), entry_im(v, 0, 0)), v11(entry_re(v, 1, 1), entry_im(v, 1, 1));
  CHECK(std::abs(v00 + v11) < 1e-9);
  CHECK(std::abs(v00) == doctest::Approx(1.0));
  CHECK(std::abs(entry_re(v, 0, 1)) + std::abs(entry_im(v, 0, 1)) < 1e-9);

  CHECK(run({"wigner", spec("block_swap")}).code == 0);
}

TEST_CASE("equiv command") {
  const Result same = run({"equiv", spec("m2_pure"), spec("m2_pure")});
  REQUIRE(same.code == 0);
  const json e = same.report()["results"]["equivalence"];
  CHECK(e["equivalent"] == true);
  CHECK(entry_re(e["witness"], 0, 0) == doctest::Approx(1.0));
  CHECK(entry_re(e["witness"], 1, 1) == doctest::Approx(1.0));

  const Result swapped = run({"equiv", spec("two_point_swap"), spec("two_point_second")});
  REQUIRE(swapped.code == 0);
  CHECK(swapped.report()["results"]["equivalence"]["equivalent"] == false);
  CHECK(swapped.report()["results"]["equivalence"]["space_dim"] == 0);

  const Result dims = run({"equiv", spec("m2_pure"), spec("m2_tracial")});
  REQUIRE(dims.code == 0);
  CHECK(dims.report()["results"]["hilbert_dims"] == json::array({2, 4}));
  CHECK(dims.report()["results"]["equivalence"]["equivalent"] == false);

  const Result pm = run({"equiv", spec("m2_plus_x"), spec("m2_minus_x")});
  REQUIRE(pm.code == 0);
  CHECK(pm.report()["results"]["equivalence"]["equivalent"] == true);

  CHECK(run({"equiv", spec("m2_pure"), spec("two_point_swap")}).code == wigrep::cli::kAlgebraMismatch);
}

TEST_CASE("ssb command") {
  const Result two = run({"ssb", "two_point_swap"});
  REQUIRE(two.code == 0);
  CHECK(two.report()["results"]["scenario"]["broken"] == true);
  CHECK(two.report()["results"]["scenario"]["verdict_matches"] == true);

  const Result ferro = run({"ssb", "ferromagnet", "--n", "3"});
  REQUIRE(ferro.code == 0);
  const json f = ferro.report()["results"];
  CHECK(f["scenario"]["broken"] == false);
  CHECK(f["implementability"]["implementable"] == true);
  CHECK(f["implementability"].contains("witness"));
  CHECK(f["scenario"].contains("implementer"));

  CHECK(run({"ssb", "block_swap"}).code == 0);
  CHECK(run({"ssb", "elementary_qm", "--d", "3"}).code == 0);
  CHECK(run({"ssb", "nonsense"}).code == wigrep::cli::kUnknownScenario);
  CHECK(run({"ssb", "ferromagnet", "--n", "7"}).code == wigrep::cli::kCapExceeded);
  CHECK(run({"ssb", "sweep", "--n-max", "21"}).code == wigrep::cli::kCapExceeded);
}

TEST_CASE("sweep CSV") {
  const Result sweep = run({"ssb", "sweep", "--n-max", "8", "--k-local", "1"});
  REQUIRE(sweep.code == 0);
  std::istringstream lines(sweep.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,implementable,implementer_residual,cross_sector_re,cross_sector_im");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string n, impl, res, re, im;
    std::getline(fields, n, ',');
    std::getline(fields, impl, ',');
    std::getline(fields, res, ',');
    std::getline(fields, re, ',');
    std::getline(fields, im, ',');
    CHECK(std::stoi(n) == rows);
    CHECK(impl == "true");
    CHECK(std::stod(res) <= 1e-9);
    if (rows > 1) CHECK(std::abs(std::stod(re)) + std::abs(std::stod(im)) <= 1e-12);
  }
  CHECK(rows == 8);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--seed", "11", "wigner", spec("block_swap")},
        std::vector<std::string>{"--seed", "11", "ssb", "ferromagnet", "--n", "2"},
        std::vector<std::string>{"--seed", "11", "equiv", spec("m2_plus_x"), spec("m2_minus_x")}}) {
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.report()["seed"] == 11);
  }
  const auto path = std::filesystem::temp_directory_path() / "wigrep_test_out.json";
  std::filesystem::remove(path);
  const Result to_file = run({"--out", path.string(), "gns", spec("m2_pure")});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["results"]["hilbert_dim"] == 2);
}
