// End-to-end tests of the command-line binary: spawns the real executable
// (path injected by the build) and checks files, formats, and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kDir = fs::temp_directory_path() / "qcoh_cli_test";

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QCOH_CLI_PATH) + " " + args + " > " +
                          (kDir / "stdout.txt").string() + " 2> " +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string cli_stderr() { return slurp(kDir / "stderr.txt"); }

struct Setup {
  Setup() {
    fs::create_directories(kDir);
    qcoh::save_state_json(qcoh::maximally_coherent(2), (kDir / "maxcoh2.json").string());
    qcoh::save_state_json(qcoh::DiagonalState::from({0.3, 0.7}).embed(),
                          (kDir / "diag.json").string());
    std::ofstream(kDir / "broken.json") << "{ nonsense";
    std::ofstream(kDir / "trace2.json")
        << R"({"dim": 2, "re": [[1,0],[0,1]], "im": [[0,0],[0,0]]})";
  }
};
const Setup setup_once;

}  // namespace

TEST_CASE("coherence of the maximally coherent qubit") {
  const fs::path out = kDir / "cq.json";
  REQUIRE(run_cli("coherence --state " + (kDir / "maxcoh2.json").string() +
                  " --measure cq --q 0.5 --out " + out.string()) == 0);
  const json rec = json::parse(slurp(out));
  CHECK(rec.at("schema_version") == 1);
  CHECK(rec.at("measure") == "cq");
  CHECK(std::abs(rec.at("value").get<double>() - 1.0) < 1e-6);
  CHECK(rec.at("converged") == true);
}

TEST_CASE("coherence of a diagonal state is zero for every measure") {
  for (const std::string m : {"cq", "c-half", "cg", "tsallis-alpha", "l1", "rel-ent"}) {
    const fs::path out = kDir / ("diag_" + m + ".json");
    const std::string qflag =
        (m == "cq" || m == "tsallis-alpha") ? " --q 0.5" : "";
    REQUIRE(run_cli("coherence --state " + (kDir / "diag.json").string() +
                    " --measure " + m + qflag + " --out " + out.string()) == 0);
    CHECK(std::abs(json::parse(slurp(out)).at("value").get<double>()) <= 1e-8);
  }
}

TEST_CASE("csv output of one record") {
  const fs::path out = kDir / "rec.csv";
  REQUIRE(run_cli("coherence --state " + (kDir / "maxcoh2.json").string() +
                  " --measure l1 --format csv --out " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("# schema_version=1") == 0);
  CHECK(text.find("measure,q,value,converged,iterations,optimal_sigma") != std::string::npos);
  CHECK(text.find("l1,") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("q out of range is exit 2") {
    CHECK(run_cli("coherence --state " + (kDir / "maxcoh2.json").string() +
                  " --measure cq --q 1.0") == 2);
    CHECK(cli_stderr().find("q out of range") != std::string::npos);
  }
  SUBCASE("malformed state file is exit 2") {
    CHECK(run_cli("coherence --state " + (kDir / "broken.json").string() +
                  " --measure cq --q 0.5") == 2);
  }
  SUBCASE("missing file is exit 2") {
    CHECK(run_cli("coherence --state " + (kDir / "nothere.json").string() +
                  " --measure cq --q 0.5") == 2);
  }
  SUBCASE("non-density input is exit 3") {
    CHECK(run_cli("coherence --state " + (kDir / "trace2.json").string() +
                  " --measure cq --q 0.5") == 3);
  }
  SUBCASE("unknown flags are exit 2") {
    CHECK(run_cli("coherence --nope") == 2);
  }
}

TEST_CASE("sweep") {
  SUBCASE("maximally coherent qubit matches the closed form at every q") {
    const fs::path out = kDir / "sweep.csv";
    REQUIRE(run_cli("sweep --state " + (kDir / "maxcoh2.json").string() +
                    " --measure cq --sweep 0.1:0.9:9 --out " + out.string()) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // schema comment
    CHECK(line == "# schema_version=1");
    std::getline(in, line);
    CHECK(line == "q,value,converged,iterations");
    int rows = 0;
    while (std::getline(in, line)) {
      double q = 0.0, value = 0.0;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,", &q, &value) == 2);
      CHECK(std::abs(value - qcoh::c_q_max(2, q)) < 1e-6);
      ++rows;
    }
    CHECK(rows == 9);
  }
  SUBCASE("single step lands on start") {
    const fs::path out = kDir / "sweep1.csv";
    REQUIRE(run_cli("sweep --state " + (kDir / "diag.json").string() +
                    " --measure cq --sweep 0.25:0.75:1 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\n0.25,") != std::string::npos);
    // Diagonal state: the value column is zero everywhere.
    CHECK(text.find("0.25,0,") != std::string::npos);
  }
  SUBCASE("identical configs give byte-identical output") {
    const fs::path a = kDir / "sweep_a.csv";
    const fs::path b = kDir / "sweep_b.csv";
    const std::string base = "sweep --state " + (kDir / "maxcoh2.json").string() +
                             " --measure cq --sweep 0.2:0.8:4 --seed 7 --out ";
    REQUIRE(run_cli(base + a.string()) == 0);
    REQUIRE(run_cli(base + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
  }
  SUBCASE("a range touching q = 1 is rejected up front") {
    CHECK(run_cli("sweep --state " + (kDir / "maxcoh2.json").string() +
                  " --measure tsallis-alpha --sweep 0.5:1.5:3") == 2);
  }
}

TEST_CASE("verify") {
  SUBCASE("small clean run exits 0") {
    const fs::path out = kDir / "verify.json";
    REQUIRE(run_cli("verify --trials 5 --d 2 --out " + out.string()) == 0);
    const json rec = json::parse(slurp(out));
    CHECK(rec.at("schema_version") == 1);
    CHECK(rec.at("overall") == "pass");
    CHECK(rec.at("suites").is_array());
    bool saw_lemma1 = false;
    for (const auto& s : rec.at("suites"))
      if (s.at("name") == "lemma1_sandwich") saw_lemma1 = s.at("passed").get<bool>();
    CHECK(saw_lemma1);
  }
  SUBCASE("zero trials pass vacuously") {
    CHECK(run_cli("verify --trials 0") == 0);
  }
  SUBCASE("injected defect exits 1 and names the suite") {
    const fs::path out = kDir / "verify_defect.json";
    CHECK(run_cli("verify --trials 5 --d 2 --inject-defect --out " + out.string()) == 1);
    const json rec = json::parse(slurp(out));
    CHECK(rec.at("overall") == "fail");
    bool failed_suite_named = false;
    for (const auto& s : rec.at("suites"))
      if (s.at("name") == "channel_completeness" && !s.at("passed").get<bool>())
        failed_suite_named = true;
    CHECK(failed_suite_named);
  }
}

TEST_CASE("search-violation") {
  SUBCASE("cq is refused") {
    CHECK(run_cli("search-violation --measure cq --q 0.5 --d 2 --trials 1") == 2);
    CHECK(cli_stderr().find("tsallis-alpha") != std::string::npos);
  }
  SUBCASE("zero trials report not found") {
    const fs::path out = kDir / "sv0.json";
    REQUIRE(run_cli("search-violation --measure tsallis-alpha --q 0.5 --d 2 --trials 0 "
                    "--out " + out.string()) == 0);
    const json rec = json::parse(slurp(out));
    CHECK(rec.at("found") == false);
    CHECK(rec.at("message") == "not found in 0 trials");
  }
  SUBCASE("fixed seed gives a deterministic report") {
    const fs::path a = kDir / "sv_a.json";
    const fs::path b = kDir / "sv_b.json";
    const std::string base =
        "search-violation --measure tsallis-alpha --q 0.5 --d 2 --trials 40 --seed 3 --out ";
    REQUIRE(run_cli(base + a.string()) == 0);
    REQUIRE(run_cli(base + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("max-coherent emits a loadable state file") {
  const fs::path out = kDir / "mc3.json";
  REQUIRE(run_cli("max-coherent --d 3 --q 0.5 --out " + out.string()) == 0);
  const qcoh::DensityMatrix rho = qcoh::load_state_json(out.string());
  CHECK(rho.dim() == 3);
  CHECK(rho(0, 2).real() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(cli_stderr().find("closed-form") != std::string::npos);
}
