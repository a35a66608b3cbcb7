#include <gtest/gtest.h>

#include "json.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct ToolRun {
  int code = -1;
  std::string out;
};

ToolRun run(const std::string& args) {
  const std::string cmd = std::string(MDL_TOOL_PATH) + " " + args + " 2>/dev/null";
  ToolRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  ToolRun r = run(args);
  EXPECT_EQ(r.code, 0) << args;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "mdl_tool_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int vertex_count(const std::string& out) {
  int rows = 0;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("dim", 0) != 0) ++rows;
  return rows;
}

}  // namespace

TEST(Cli, VertexCounts) {
  EXPECT_EQ(vertex_count(run("vertices --l 0 --h 2/7").out), 64);
  EXPECT_EQ(vertex_count(run("vertices --l 1/4 --h 1/4").out), 16);
  EXPECT_EQ(vertex_count(run("vertices --l 1/8 --h 5/16").out), 192);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run("vertices --l 0").code, 2);
  EXPECT_EQ(run("vertices --l 0 --h banana").code, 2);
  EXPECT_EQ(run("vertices --l 0 --h 1/5").code, 2);
  EXPECT_EQ(run("scan --h-grid \"\"").code, 2);
  EXPECT_EQ(run("scan --h-grid 2/7 --random 3").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, MalformedPointFileExitsWithThree) {
  auto path = scratch("bad.txt");
  std::ofstream(path) << "not a point file\n";
  EXPECT_EQ(run("check --point " + path.string() + " --l 0 --h 2/7").code, 3);
}

TEST(Cli, OutputIsDeterministic) {
  for (std::string args : {"vertices --l 1/8 --h 5/16", "chsh-bound --l 1/10 --h 1/2", "scan --random 2 --seed 9"}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}

TEST(Cli, GoldenQuantumPointIsOutside) {
  auto point = scratch("golden.txt");
  auto q = run_json("quantum-eval --preset golden --l 1/100 --h 1/4 --point-out " + point.string());
  EXPECT_NEAR(q["golden_lhs"].get<double>(), 0.01 / 48, 1e-12);
  auto c = run_json("check --point " + point.string() + " --l 1/100 --h 1/4");
  ASSERT_EQ(c["points"].size(), 1u);
  EXPECT_EQ(c["points"][0]["status"], "outside");
  EXPECT_TRUE(c["points"][0]["golden_violated"].get<bool>());
}

TEST(Cli, VerticesAreInsideTheirPolytope) {
  auto path = scratch("v.txt");
  std::ofstream(path) << run("vertices --l 0 --h 1/3").out;
  auto c = run_json("check --point " + path.string() + " --l 0 --h 1/3");
  ASSERT_EQ(c["points"].size(), 64u);
  for (const auto& p : c["points"]) EXPECT_EQ(p["status"], "inside");
}

TEST(Cli, FacetFamiliesAtTheLocalLimit) {
  auto r = run_json("facets --l 1/4 --h 1/4");
  EXPECT_EQ(r["vertex_count"], 16);
  EXPECT_EQ(r["family_count"], 2);
  EXPECT_TRUE(r["orbits_recover_facets"].get<bool>());
}

TEST(Cli, ChshBoundMatchesLinearProgram) {
  auto r = run_json("chsh-bound --l 0 --h 2/7");
  EXPECT_EQ(r["bound"], "20/7");
  EXPECT_EQ(r["lp_value"], "20/7");
  EXPECT_TRUE(r["lp_matches_bound"].get<bool>());
  EXPECT_EQ(r["maximizer_count"], 8);
}

TEST(Cli, ScanGridAndRandom) {
  auto g = run_json("scan --h-grid 2/7,3/10");
  EXPECT_EQ(g["summary"]["points"], 2);
  EXPECT_EQ(g["summary"]["all_valid"], 2);
  EXPECT_EQ(g["summary"]["all_saturated"], 2);
  auto r = run_json("scan --random 3 --seed 7");
  EXPECT_EQ(r["summary"]["points"], 3);
  EXPECT_EQ(r["summary"]["all_valid"], 3);
  EXPECT_EQ(r["summary"]["all_saturated"], 3);
}

TEST(Cli, SliceCsvHasRowsPerSetAndRay) {
  ToolRun r = run("slice --preset chsh-pr --sets local,ns --resolution 8");
  ASSERT_EQ(r.code, 0);
  int local = 0, ns = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("local,", 0) == 0) ++local;
    if (line.rfind("ns,", 0) == 0) ++ns;
  }
  EXPECT_EQ(local, 8);
  EXPECT_EQ(ns, 8);
  EXPECT_NE(r.out.find("ns,0,0,1,0,1/1,0/1"), std::string::npos);
}
