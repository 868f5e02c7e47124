#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dvl/io.hpp"
#include "support.hpp"

using namespace dvl;
using namespace dvl::test;
using dvl::io::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = (env.empty() ? "" : "env " + env + " ") + std::string(DVL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

json run_json(const std::string& args, int expected_status) {
  const Run r = run(args);
  INFO(args);
  REQUIRE(r.status == expected_status);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  return j;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "dvl_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("cli crossings on f_r") {
  const json j = run_json("crossings f_r:r=0.5", 0);
  REQUIRE(j["results"]["classes"].size() == 1);
  const json angles = j["results"]["classes"][0]["angles"];
  CHECK(angles[0].get<double>() == Catch::Approx(0.0).margin(1e-10));
  CHECK(angles[1].get<double>() == Catch::Approx(kPi));
}

TEST_CASE("cli invariants on f_r") {
  const json j = run_json("invariants f_r:r=0.5", 0);
  const json ratio = j["results"]["classes"][0]["ratio"];
  CHECK(ratio[0].get<double>() == Catch::Approx(3.0).epsilon(1e-12));
  CHECK(ratio[1].get<double>() == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(j["results"]["classes"][0]["pair_data"][0]["A"].get<double>() == Catch::Approx(4.0));
}

TEST_CASE("cli validate on a JSON map") {
  const auto path = scratch_dir() / "identity.json";
  std::ofstream(path) << R"({"dim":1, "scale":1, "components":[[[0,0],[1,0]]]})";
  const json j = run_json("validate " + path.string(), 0);
  CHECK(j["results"]["ok"] == true);

  const auto sq = scratch_dir() / "square.json";
  std::ofstream(sq) << R"({"dim":1, "scale":1, "components":[[[0,0],[0,0],[1,0]]]})";
  const json k = run_json("validate " + sq.string(), 3);
  CHECK(k["results"]["injectivity"]["ok"] == false);
  CHECK(k["status"] == "validation_failure");
}

TEST_CASE("cli reports input errors with exit code 2") {
  CHECK(run("crossings nope:r=1").status == 2);
  CHECK(run("crossings f_r:r=1.5").status == 2);
  CHECK(run("crossings missing.json").status == 2);
  CHECK(run("verify nonsense").status == 2);
  CHECK(run("metric f_r:r=0.5 --z abc --w 0").status == 2);
  CHECK(run("classify f_r:r=0.5 --mode sideways f_r:r=0.3").status == 2);
  CHECK(run("--bogus").status == 2);
  CHECK(run("").status == 2);
  const auto bad = scratch_dir() / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run("validate " + bad.string()).status == 2);
}

TEST_CASE("cli classify") {
  CHECK(run_json("classify f_r:r=0.3 f_r:r=0.6 --mode equality", 0)["results"]["kind"] == "RatioObstruction");

  const json sym = run_json("classify f_symmetric:r=0.3 f_symmetric:r=0.5", 0)["results"];
  CHECK(sym["kind"] == "CandidateAutomorphisms");
  CHECK(sym["flag"] == "open: equality undecided");
  CHECK(sym["alpha_beta"]["alpha"].get<double>() == Catch::Approx(0.0).margin(1e-12));
  CHECK(sym["alpha_beta"]["beta"].get<double>() == Catch::Approx(0.0).margin(1e-12));

  const json rec = run_json("classify f_rs:r=0.2,s=0.6 --mu-lambda 0.6,0.8 --mu-a 0.3,-0.2", 0)["results"];
  CHECK(rec["kind"] == "CandidateAutomorphisms");
  CHECK(rec["recovered"]["parameter_error"].get<double>() <= 1e-8);
  const cplx lambda = io::decode_cplx(rec["recovered"]["mu"]["lambda"]);
  const cplx a = io::decode_cplx(rec["recovered"]["mu"]["a"]);
  CHECK(close(lambda, {0.6, 0.8}, 1e-8));
  CHECK(close(a, {0.3, -0.2}, 1e-8));
}

TEST_CASE("cli metric and pick") {
  const json m = run_json("metric g_alpha:alpha=0 --z 0.5 --w 0", 0);
  // g_0(z) = z³, so d = |z³ - w³| / |1 - conj(w³) z³| = 1/8.
  CHECK(m["results"]["d"].get<double>() == Catch::Approx(0.125).epsilon(1e-12));

  const json p = run_json(R"(pick f_r:r=0.5 '{"nodes":[[0,0],[0.5,0]],"targets":[[0,0],[0.01,0]]}')", 0);
  CHECK(p["results"]["feasible"] == true);
  const json q = run_json(R"(pick f_r:r=0.5 '{"nodes":[[0,0],[0.5,0]],"targets":[[0,0],[0.99,0]]}')", 0);
  CHECK(q["results"]["feasible"] == false);
  CHECK(q["results"]["min_eigenvalue"].get<double>() < 0.0);
  CHECK(run(R"(pick f_r:r=0.5 '{"nodes":[[0,0]],"targets":[]}')").status == 2);
}

TEST_CASE("cli verify suites") {
  for (const char* suite : {"expansion", "path_metric", "kernel_diff"}) {
    const json j = run_json(std::string("verify ") + suite, 0);
    CHECK(j["results"]["passed"] == true);
  }
  const json d = run_json("verify duality --pairs 20", 0);
  CHECK(d["results"]["passed"] == true);
  for (const json& c : run_json("verify path_metric", 0)["results"]["cases"]) {
    if (c["name"].get<std::string>().rfind("f_r:", 0) == 0 && c["name"].get<std::string>().find("decay") != std::string::npos)
      CHECK(c["measured"].get<double>() < 0.01);
  }
}

TEST_CASE("cli output is deterministic") {
  CHECK(run("verify duality --seed 5 --pairs 10").out == run("verify duality --seed 5 --pairs 10").out);
  CHECK(run("invariants f_three_crossing").out == run("invariants f_three_crossing").out);
}

TEST_CASE("cli sweep over f_r") {
  const auto out = scratch_dir() / "fr.csv";
  run_json("sweep f_r --param r --values 0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9 --out " + out.string(), 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].back() == "a_ratio");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double r = std::stod(rows[k][0]);
    CHECK(std::abs(std::stod(rows[k].back()) - (1.0 + r) / (1.0 - r)) <= 1e-10);
  }
}

TEST_CASE("cli sweep over the three-point family") {
  const auto out = scratch_dir() / "three.csv";
  run_json("sweep f_three_crossing --param alpha --values 0.9,0.95,0.99 --out " + out.string(), 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1].back()) < std::stod(rows[2].back()));
  CHECK(std::stod(rows[2].back()) < std::stod(rows[3].back()));
}

TEST_CASE("cli sweep edge cases") {
  const auto out = scratch_dir() / "empty.csv";
  run_json("sweep f_r --param r --values '' --out " + out.string(), 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "value");
  CHECK(run("sweep f_r --param r --values 0.5,1.5").status == 2);
  CHECK(run("sweep f_three_crossing --param alpha --values -0.7").status == 2);
}

TEST_CASE("cli families") {
  const json j = run_json("families", 0);
  CHECK(j["results"]["kinds"].size() == family_kinds().size());
  CHECK(j["results"]["f_three_crossing"]["alpha1"].get<double>() == kCatalogAlpha1);
  CHECK(j["results"]["f_three_crossing"]["screen"]["passed"] == true);
}

TEST_CASE("cli honors DVL_TOL_SCALE") {
  const auto path = scratch_dir() / "near_sphere.json";
  std::ofstream(path) << R"({"dim":1, "scale":0.99999, "components":[[[0,0],[1,0]]]})";
  CHECK(run("validate " + path.string()).status == 3);
  CHECK(run("validate " + path.string(), "DVL_TOL_SCALE=1e5").status == 0);
  CHECK(run("validate " + path.string(), "DVL_TOL_SCALE=abc").status == 3);
}
