#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubecx/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cubecx::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(CUBECX_FIXTURE_DIR) + "/" + name; }

std::string golden(const std::string& name) {
  std::ifstream in(std::string(CUBECX_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cubecx_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("goldens") {
  struct Case {
    std::vector<std::string> args;
    std::string file;
    int code;
  };
  std::vector<Case> cases = {
      {{"check", fixture("cube3.cc")}, "check_cube3.txt", 0},
      {{"walls", fixture("square.cc")}, "walls_square.txt", 0},
      {{"special", fixture("cube3.cc")}, "special_cube3.txt", 0},
      {{"special", fixture("torus1v.cc")}, "special_torus1v.txt", 1},
      {{"develop", fixture("torus1v.cc"), "--base", "v", "--radius", "2"}, "develop_torus1v_r2.txt", 0},
      {{"gamma", fixture("path3.cc")}, "gamma_path3.txt", 0},
      {{"color", fixture("grid2x2.cc")}, "color_grid2x2.txt", 0},
      {{"reduce", "--gamma", fixture("k2.gamma"), "--coloring", fixture("k2_33.coloring"), "--n", "3"},
       "reduce_k2.txt", 0},
      {{"solve-gluing", "--matrix", fixture("forced.matrix"), "--hint", fixture("forced.hint")}, "solve_forced.txt", 0},
      {{"hierarchy", fixture("segment.cc")}, "hierarchy_segment.txt", 0},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    Result r = run(c.args);
    CHECK(r.code == c.code);
    CHECK(r.out == golden(c.file));
    CHECK(r.err.empty());
  }
}

TEST_CASE("output is deterministic") {
  for (std::string name : {"cube3_subdivided.cc", "broom.cc", "grid3x2.cc"}) {
    CAPTURE(name);
    Result a = run({"hierarchy", fixture(name)});
    Result b = run({"hierarchy", fixture(name)});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("special verdicts and witnesses") {
  Result cube = run({"special", fixture("cube3.cc")});
  CHECK(cube.code == 0);
  CHECK(cube.out.find("verdict: true") != std::string::npos);

  Result torus = run({"special", fixture("torus1v.cc")});
  CHECK(torus.code == 1);
  CHECK(torus.out.find("verdict: false") != std::string::npos);
  CHECK(torus.out.find("vertex v:") != std::string::npos);
  CHECK(torus.out.find("odd_cycle:") != std::string::npos);

  Result osc = run({"special", fixture("inter_osculation.cc")});
  CHECK(osc.code == 1);
  CHECK(osc.out.find("cond2_violations: 3") != std::string::npos);
}

TEST_CASE("hierarchy trace directory") {
  fs::path dir = scratch("trace_square");
  Result r = run({"hierarchy", fixture("square.cc"), "--trace", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("isomorphic to X: true") != std::string::npos);
  CHECK(fs::exists(dir / "summary.txt"));
  // square: k = 1, levels 2, 1, 0
  for (int j = 0; j <= 2; ++j) CHECK(fs::exists(dir / ("level_" + std::to_string(j) + ".txt")));
  fs::remove_all(dir);
}

TEST_CASE("hierarchy with a group and the uniform measure") {
  Result g = run({"hierarchy", fixture("broom.cc"), "--group", fixture("broom_swap.group")});
  CHECK(g.code == 0);
  CHECK(g.out.find("group_order: 2") != std::string::npos);
  CHECK(g.out.find("result: ok") != std::string::npos);

  Result u = run({"hierarchy", fixture("square.cc"), "--measure", "uniform"});
  CHECK(u.code == 0);
  CHECK(u.out.find("result: ok") != std::string::npos);

  Result bad = run({"hierarchy", fixture("square.cc"), "--measure", "nope"});
  CHECK(bad.code == 2);
}

TEST_CASE("invalid and unparsable input") {
  Result open = run({"check", fixture("open_square.cc")});
  CHECK(open.code == 1);
  CHECK(open.out.find("valid: false") != std::string::npos);
  CHECK(open.out.find("missing face") != std::string::npos);

  Result broken = run({"special", fixture("broken.cc")});
  CHECK(broken.code == 2);
  CHECK(broken.err.rfind("error:", 0) == 0);
  CHECK(broken.err.find("broken.cc") != std::string::npos);
  CHECK(broken.err.find("line 2") != std::string::npos);

  Result missing = run({"walls", fixture("no_such_file.cc")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("no_such_file.cc") != std::string::npos);

  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"develop", fixture("square.cc"), "--base", "zz", "--radius", "1"}).code == 2);
  CHECK(run({"hierarchy", fixture("cycle4.cc")}).code == 2);
}

TEST_CASE("reduce keeps proper colourings proper") {
  Result r = run({"reduce", "--gamma", fixture("k2.gamma"), "--coloring", fixture("k2_13.coloring"), "--n", "3"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["0"].get<int>() != j["1"].get<int>());
  CHECK(j["0"].get<int>() <= 3);
  CHECK(j["1"].get<int>() <= 3);
}

TEST_CASE("solve-gluing with a rational hint") {
  Result r = run({"solve-gluing", "--matrix", fixture("ratio.matrix"), "--hint", fixture("ratio.hint")});
  CHECK(r.code == 0);
  CHECK(r.out.find("w: 3 2") != std::string::npos);
}

TEST_CASE("develop writes the ball") {
  fs::path dir = scratch("develop");
  fs::create_directories(dir);
  fs::path out = dir / "ball.cc";
  Result r = run({"develop", fixture("torus1v.cc"), "--base", "v", "--radius", "1", "--out", out.string()});
  CHECK(r.code == 0);
  REQUIRE(fs::exists(out));
  Result c = run({"check", out.string()});
  CHECK(c.code == 0);
  CHECK(c.out.find("vertices: 5") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("binary exit codes and fixture lookup") {
  std::string bin = CUBECX_BINARY;
  std::string env = std::string("CUBECX_FIXTURES=") + CUBECX_FIXTURE_DIR + " ";
  std::string quiet = " > /dev/null 2>&1";
  CHECK(shell(env + bin + " special cube3.cc" + quiet) == 0);
  CHECK(shell(env + bin + " special torus1v.cc" + quiet) == 1);
  CHECK(shell(env + bin + " special broken.cc" + quiet) == 2);
  CHECK(shell(env + bin + " check open_square.cc" + quiet) == 1);
  CHECK(shell(env + bin + " hierarchy segment.cc" + quiet) == 0);
  CHECK(shell("CUBECX_FIXTURES=/nonexistent " + bin + " special cube3.cc" + quiet) == 2);
}
