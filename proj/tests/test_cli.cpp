#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"
#include "ghlab/errors.hpp"
#include "ghlab/scenario.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = GHLAB_SCENARIO_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "ghlab_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ghlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kBase = R"toml(name = "mutation base"

[manifold]
type = "punctured_torus"
puncture = [1.0, 1.5, 0.3]

[torus]
m = 1
xi_max = 8

[[forms]]
lambda = ["1/2", "0"]
v = "0.1*sin(t1)"

[[rhs]]
xi = [1]
dt1 = "1"

[solver]
tol = 1e-9
grid = 16

[output]
directory = "out"
)toml";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("base scenario parses") {
  const ghlab::ScenarioFile f = ghlab::parse_scenario(kBase, "base.toml");
  CHECK(f.scenario.m == 1);
  CHECK(f.scenario.forms.size() == 1);
  CHECK(f.scenario.rhs.size() == 1);
  CHECK(f.scenario.grid == 16);
  CHECK(f.output.directory == "out");
}

TEST_CASE("mutated scenarios are rejected with line numbers") {
  const std::string b = kBase;
  const std::vector<std::string> mutants{
      replace(b, "name =", "nmae ="),
      replace(b, "type =", "kind ="),
      replace(b, "puncture =", "punture ="),
      replace(b, "m = 1", "dim = 1"),
      replace(b, "xi_max =", "ximax ="),
      replace(b, "lambda =", "lamda ="),
      replace(b, "v = \"0.1", "w = \"0.1"),
      replace(b, "xi = [1]", "freq = [1]"),
      replace(b, "dt1 =", "dt3 ="),
      replace(b, "tol =", "tolerance ="),
      replace(b, "grid =", "grid_size ="),
      replace(b, "directory =", "dir ="),
      replace(b, "[solver]", "[solvr]"),
      replace(b, "[torus]", "[tori]"),
      replace(b, "\"punctured_torus\"", "\"sphere\""),
      replace(b, "\"1/2\"", "\"1/0\""),
      replace(b, "0.1*sin(t1)", "0.1*sin(t3)"),
      replace(b, "m = 1", "m = 2"),
      replace(b, "xi = [1]", "xi = [1, 2]"),
      replace(b, "grid = 16", "grid = \"16\""),
  };
  REQUIRE(mutants.size() == 20);
  const fs::path dir = scratch("mutants");
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    CAPTURE(i);
    CHECK_THROWS_AS(ghlab::parse_scenario(mutants[i], "mutant.toml"), ghlab::SchemaError);
    try {
      ghlab::parse_scenario(mutants[i], "mutant.toml");
    } catch (const ghlab::SchemaError& e) {
      CHECK(e.line() > 0);
      CHECK(std::string(e.what()).find("mutant.toml:") != std::string::npos);
    }
    const fs::path p = dir / ("m" + std::to_string(i) + ".toml");
    std::ofstream(p) << mutants[i];
    const Run r = run({"classify", p.string(), "--out", (dir / "o").string()});
    CHECK(r.code == ghlab::cli::kError);
    CHECK(r.err.find("SchemaError") != std::string::npos);
  }
  // the unknown key is located on its own line
  try {
    ghlab::parse_scenario(replace(b, "tol =", "tolerance ="), "x.toml");
  } catch (const ghlab::SchemaError& e) {
    CHECK(e.line() == 20);
  }
  CHECK_THROWS_AS(ghlab::parse_scenario("[manifold\n", "broken.toml"), ghlab::SchemaError);
}

TEST_CASE("classify on the half-angle scenario") {
  const fs::path out = scratch("classify");
  const Run r = run({"classify", (kScenarios / "half.toml").string(), "--out", out.string()});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "verdict.json"));
  CHECK(doc["verdict"] == "rational");
  CHECK(doc["xi"] == nlohmann::json::array({2}));
  CHECK(doc["classification"]["exact"] == true);
}

TEST_CASE("flag validation and exit codes") {
  const std::string half = (kScenarios / "half.toml").string();
  const fs::path out = scratch("codes");
  CHECK(run({"dcscan", half, "--radius", "0", "--out", out.string()}).code == 1);
  CHECK(run({"dcscan", half, "--format", "xml", "--out", out.string()}).code == 1);
  CHECK(run({"frobnicate", half}).code == 1);
  CHECK(run({"classify", (out / "missing.toml").string()}).code == 1);
  // a rational scan radius containing the witness is an error, not a verdict
  CHECK(run({"dcscan", half, "--radius", "4", "--out", out.string()}).code == 1);
  CHECK(run({"counterexample", half, "--kind", "liouville", "--out", out.string()}).code == 1);
  CHECK(run({"counterexample", (kScenarios / "golden.toml").string(), "--out", out.string()}).code == 1);

  // [[L, L]] cannot be decided
  const fs::path ind = out / "indeterminate.toml";
  std::ofstream(ind) << R"toml([manifold]
type = "punctured_torus"
[torus]
m = 2
[[forms]]
lambda = ["liouville:base=2,schedule=factorial", "0"]
[[forms]]
lambda = ["liouville:base=2,schedule=factorial", "0"]
)toml";
  CHECK(run({"classify", ind.string(), "--out", out.string()}).code == 2);

  // incompatible data: some modes fail, verdict inconclusive
  const fs::path inc = out / "inconclusive.toml";
  std::ofstream(inc) << R"toml([manifold]
type = "punctured_torus"
[torus]
m = 1
xi_max = 8
[[forms]]
lambda = ["(1+1*sqrt(5))/2", "0"]
[[rhs]]
xi = [0]
dt1 = "1"
[solver]
grid = 16
)toml";
  const Run r = run({"solve", inc.string(), "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("INCONCLUSIVE") != std::string::npos);
}

TEST_CASE("solve on the golden scenario reports RAPID") {
  const fs::path out = scratch("golden");
  const Run r = run({"solve", (kScenarios / "golden.toml").string(), "--grid", "16", "--out", out.string()});
  CHECK(r.code == 0);
  const std::string decay = slurp(out / "decay.csv");
  CHECK(decay.rfind("shell,sup,verdict\n", 0) == 0);
  CHECK(decay.find(",RAPID") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(out / "verdict.json"));
  CHECK(doc["conclusion"] == "GH_CONSISTENT");
  // json numbers are the parsed csv cells
  const std::string div = slurp(out / "divisors.csv");
  CHECK(div.find("e+00") != std::string::npos);
}

TEST_CASE("identical inputs give byte-identical tables") {
  const std::string golden = (kScenarios / "golden.toml").string();
  const std::string liou = (kScenarios / "liouville.toml").string();
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& [dir, threads] : {std::pair{a, "1"}, std::pair{b, "3"}}) {
    CHECK(run({"solve", golden, "--grid", "12", "--threads", threads, "--out", (dir / "s").string()}).code == 0);
    CHECK(run({"dcscan", golden, "--radius", "300", "--threads", threads, "--out", (dir / "d").string()}).code == 0);
    CHECK(run({"counterexample", liou, "--threads", threads, "--out", (dir / "c").string()}).code == 0);
    CHECK(run({"periods", liou, "--out", (dir / "p").string(), "--format", "json"}).code == 0);
  }
  for (const char* f : {"s/coefficients.csv", "s/decay.csv", "s/divisors.csv", "s/verdict.json", "d/dcscan.csv",
                        "d/verdict.json", "c/terms.json", "c/u_decay.csv", "c/Lu_decay.csv", "c/residual.json",
                        "p/periods.json"}) {
    CAPTURE(f);
    const std::string x = slurp(a / f);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(b / f));
  }
}

TEST_CASE("verify runs the invariant suite") {
  const fs::path out = scratch("verify");
  const Run r = run({"verify", (kScenarios / "family_integral.toml").string(), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("5 passed, 0 failed") != std::string::npos);
  CHECK(fs::exists(out / "invariants.csv"));
}
