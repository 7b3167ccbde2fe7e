#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "akcotton/cli.hpp"
#include "akcotton/geometry_io.hpp"

using namespace akc;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "akcotton_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& sub, const fs::path& input, bool machine = false) {
  RunConfig c;
  c.subcommand = sub;
  c.input_path = input;
  c.format = machine ? OutputFormat::Machine : OutputFormat::Human;
  return c;
}

}  // namespace

TEST_CASE("soliton report on the lambda = 1 fixture") {
  const fs::path p = write_temp("k1.json", R"({"kenmotsu": {"lambda": 1, "b": 0, "c": 0}})");
  RunConfig cfg = config("soliton", p);
  cfg.ansatz = Ansatz::Orthogonal;
  const Result human = run_cli(cfg);
  CHECK(human.code == kExitOk);
  CHECK(human.out.find("classification: Steady") != std::string::npos);
  CHECK(human.out.find("sigma = 0") != std::string::npos);
  CHECK(human.out.find("(v2 = v3)") != std::string::npos);

  cfg.format = OutputFormat::Machine;
  const nlohmann::json doc = nlohmann::json::parse(run_cli(cfg).out);
  CHECK(doc["classification"] == "Steady");
  CHECK(doc["family_dim"] == 1);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["tool_version"] == kToolVersion);
}

TEST_CASE("verify-paper exit codes") {
  RunConfig cfg;
  cfg.subcommand = "verify-paper";
  cfg.grid = {0.5, 1, 2};
  const Result r = run_cli(cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);

  cfg.grid = {0.0};
  CHECK(run_cli(cfg).code == kExitInputError);
}

TEST_CASE("malformed input exits 1 with a field diagnostic") {
  const fs::path p = write_temp("bad.json", R"({"kenmotsu": {"lambda": 1, "gamma": 2}})");
  const Result r = run_cli(config("curvature", p));
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("kenmotsu.gamma") != std::string::npos);
  CHECK(r.out.empty());

  const Result missing = run_cli(config("curvature", "/nonexistent/x.json"));
  CHECK(missing.code == kExitInputError);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  const fs::path abelian = write_temp("abelian.json", R"({"brackets": []})");
  CHECK(run_cli(config("structure", abelian)).code == kExitInputError);
  CHECK(run_cli(config("nonsense", abelian)).code == kExitInputError);
}

TEST_CASE("curvature report labels the adapted frame") {
  const fs::path p = write_temp("k2.json", R"({"kenmotsu": {"lambda": 2}})");
  const Result r = run_cli(config("curvature", p));
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("nabla_{e} xi = e - 2 phi e") != std::string::npos);
  CHECK(r.out.find("S(xi,xi) = -10") != std::string::npos);
  CHECK(r.out.find("scalar curvature r = -14") != std::string::npos);
  CHECK(r.out.find("classification: NotSymmetric") != std::string::npos);

  const Result c = run_cli(config("cotton", p));
  CHECK(c.out.find("C22 = C(e,e) = 12") != std::string::npos);
}

TEST_CASE("machine reports round-trip tensors exactly") {
  const fs::path p = write_temp("nu.json", R"({"nonunimodular": {"alpha": 2, "beta": 0.5}})");
  const MetricLieAlgebra3 a = load_geometry(p);
  const ConnectionTable conn = levi_civita(a);
  const CurvaturePack pack = curvature(a, conn);

  const nlohmann::json curv = nlohmann::json::parse(run_cli(config("curvature", p, true)).out);
  CHECK(mat3_from_json(curv["ricci"]) == pack.ricci.matrix());
  const Tensor3 gamma = tensor3_from_json(curv["connection"]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(gamma.t[i] == conn.gamma.t[i]);

  const nlohmann::json cot = nlohmann::json::parse(run_cli(config("cotton", p, true)).out);
  const CottonPack cp = cotton(a, conn, pack);
  CHECK(mat3_from_json(cot["cotton2"]) == cp.cotton2.matrix());
  const Tensor3 c3 = tensor3_from_json(cot["cotton3"]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c3.t[i] == cp.cotton3.t[i]);

  const nlohmann::json st = nlohmann::json::parse(run_cli(config("structure", p, true)).out);
  for (const auto& inv : st["invariants"]) CHECK(inv["passed"] == true);
  CHECK(st["h_parallel"]["holds"] == true);
}

TEST_CASE("flow export") {
  const fs::path p = write_temp("k1f.json", R"({"kenmotsu": {"lambda": 1}})");
  const fs::path csv = fs::temp_directory_path() / "akcotton_cli_tests" / "traj.csv";
  RunConfig cfg = config("flow", p, true);
  cfg.steps = 10;
  cfg.stride = 5;
  cfg.export_path = csv;
  const Result r = run_cli(cfg);
  CHECK(r.code == kExitOk);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["fixed_point"] == true);
  CHECK(doc["trajectory"].size() == 3);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "time,g11,g12,g13,g22,g23,g33,cotton_norm");

  cfg.dt = -1;
  CHECK(run_cli(cfg).code == kExitInputError);
}

TEST_CASE("verify-paper machine report is deterministic") {
  RunConfig cfg;
  cfg.subcommand = "verify-paper";
  cfg.format = OutputFormat::Machine;
  const std::string a = run_cli(cfg).out, b = run_cli(cfg).out;
  CHECK(a == b);
  CHECK(nlohmann::json::parse(a)["all_passed"] == true);
}

TEST_CASE("grid parsing and tolerance from the environment") {
  CHECK(parse_grid("0.5,1,2") == std::vector<double>{0.5, 1, 2});
  CHECK(parse_grid("3") == std::vector<double>{3});
  CHECK_THROWS(parse_grid("1,x"));
  CHECK_THROWS(parse_grid("1,2abc"));

  ::setenv(kToleranceEnv, "1e-6", 1);
  CHECK(tolerance_from_env(1e-9) == 1e-6);
  ::setenv(kToleranceEnv, "junk", 1);
  CHECK(tolerance_from_env(1e-9) == 1e-9);
  ::setenv(kToleranceEnv, "-1", 1);
  CHECK(tolerance_from_env(1e-9) == 1e-9);
  ::unsetenv(kToleranceEnv);
  CHECK(tolerance_from_env(1e-9) == 1e-9);
}
