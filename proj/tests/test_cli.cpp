#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#ifndef CRN_BINARY
#error "CRN_BINARY must name the crn executable"
#endif

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(CRN_BINARY) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(CRN_DATA_DIR) + "/" + name + ".crn"; }

nlohmann::json analyze_json(const std::string& name) {
  const Run r = run("analyze " + fixture(name) + " --json -");
  REQUIRE(r.exit_code == 0);
  return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(CRN_TEMP_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("analyze PHOS2") {
  const nlohmann::json j = analyze_json("phos2");
  CHECK(j["complex_balanced"] == true);
  CHECK(j["detailed_balanced"] == false);
  CHECK(j["formally_balanced"] == false);
  CHECK(j["network"]["deficiency"] == 3);
  CHECK(j["network"]["dim_S"] == 9);
  CHECK(j["lattice"]["rank_N2"] == 3);
  CHECK(j["witnesses"]["formal"]["forward_product"] == "1/16");
  CHECK(j["witnesses"]["formal"]["backward_product"] == "81/4096");
  CHECK(j["theorem"]["consistent"] == true);
  CHECK(j["steady_state"]["residual"].get<double>() < 1e-9);
  CHECK(j["tree_constants"]["K"].size() == 14);
}

TEST_CASE("analyze AB and TRI") {
  const nlohmann::json ab = analyze_json("ab");
  CHECK(ab["complex_balanced"] == true);
  CHECK(ab["detailed_balanced"] == true);
  CHECK(ab["formally_balanced"] == true);
  CHECK(ab["network"]["deficiency"] == 0);
  CHECK(ab["tree_constants"]["K"] == nlohmann::json::array({"1", "2"}));

  const nlohmann::json tri = analyze_json("tri");
  CHECK(tri["complex_balanced"] == true);
  CHECK(tri["detailed_balanced"] == true);
  CHECK(tri["formally_balanced"] == true);
}

TEST_CASE("analyze without a steady state") {
  const Run r = run("analyze " + fixture("phos2") + " --no-steady-state --json -");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["steady_state"].is_null());
}

TEST_CASE("reports are deterministic") {
  const Run first = run("analyze " + fixture("phos2") + " --json -");
  const Run second = run("analyze " + fixture("phos2") + " --json -");
  CHECK(first.out == second.out);
  CHECK(nlohmann::ordered_json::parse(first.out).dump(2) + "\n" == first.out);

  const std::string path = std::string(CRN_TEMP_DIR) + "/phos2_report.json";
  REQUIRE(run("analyze " + fixture("phos2") + " --json " + path).exit_code == 0);
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == first.out);
}

TEST_CASE("exit code 2 on bad input") {
  const std::string loop =
      temp_file("self_loop.crn", "species a b\ncomplex 1 : a\ncomplex 2 : b\nreaction 1 <-> 1 : 1, 1\n");
  const Run r = run("analyze " + loop);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("self-loop at line 4") != std::string::npos);

  CHECK(run("analyze " + std::string(CRN_TEMP_DIR) + "/missing.crn").exit_code == 2);
  const std::string unknown = temp_file("unknown.crn", "species a\ncomplex 1 : a\ncomplex 2 : z\n");
  const Run u = run("analyze " + unknown);
  CHECK(u.exit_code == 2);
  CHECK(u.out.find("line 3") != std::string::npos);
  CHECK(run("simulate " + fixture("ab") + " --c0 1 --t-end 1 --dt 0.1").exit_code == 2);
  CHECK(run("trees " + fixture("ab") + " --vertex 3").exit_code == 2);
  CHECK(run("analyze").exit_code == 2);
  CHECK(run("bogus").exit_code == 2);
}

TEST_CASE("trees") {
  const Run r = run("trees " + fixture("hex") + " --vertex 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "vertex 1: trees 15, K = 15\n");
  const Run all = run("trees " + fixture("ab"));
  CHECK(all.out == "vertex 1: trees 1, K = 1\nvertex 2: trees 1, K = 2\n");
}

TEST_CASE("simulate") {
  const Run r = run("simulate " + fixture("ab") + " --c0 3,0 --t-end 20 --dt 1e-3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("t,a,b\n0,3,0\n", 0) == 0);
  const std::size_t last_line = r.out.rfind('\n', r.out.size() - 2);
  const std::string last = r.out.substr(last_line + 1);
  CHECK(last.rfind("20,", 0) == 0);
  const double a = std::stod(last.substr(3));
  CHECK(std::abs(a - 1.0) < 1e-6);

  const std::string out = std::string(CRN_TEMP_DIR) + "/ab.csv";
  const Run to_file = run("simulate " + fixture("ab") + " --c0 3/2,3/2 --t-end 1 --dt 0.5 --out " + out);
  CHECK(to_file.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,a,b");
}

TEST_CASE("fuzz") {
  const Run plain = run("fuzz --species 5 --complexes 8 --seed 1 --trials 20");
  CHECK(plain.exit_code == 0);
  CHECK(plain.out.find("violations 0") != std::string::npos);
  const Run fb = run("fuzz --species 5 --complexes 8 --seed 1 --trials 20 --formally-balanced");
  CHECK(fb.exit_code == 0);
  CHECK(fb.out.find("trials 20, formally balanced 20") != std::string::npos);
  CHECK(run("fuzz --species 5 --complexes 8 --seed 1 --trials 20").out == plain.out);
}
