#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ddsub/mesh2d.hpp"
#include "ddsub/subdivide.hpp"

using namespace ddsub;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ddsub");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ddsub_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("run prints counts") {
    const Outcome o = run({"run", "--poly", "x1^2+x2^2-1", "--center", "0,0", "--halfwidth", "2"});
    CHECK(o.code == cli::kOk);
    CHECK(has(o.out, "c0: 36\n"));
    CHECK(has(o.out, "c1: 40\n"));
    CHECK(has(o.out, "capped: 0\n"));
    CHECK(has(o.out, "terminal: 76\n"));
    CHECK(has(o.out, "max_depth: 4\n"));
  }

  TEST_CASE("invalid input exits with 2") {
    CHECK(run({"run", "--poly", "0"}).code == cli::kInvalidInput);
    CHECK(run({"run", "--poly", "x1^"}).code == cli::kInvalidInput);
    CHECK(run({"run", "--poly", "x1", "--halfwidth", "0"}).code == cli::kInvalidInput);
    CHECK(run({"run", "--poly", "x1", "--halfwidth", "1/3"}).code == cli::kInvalidInput);
    CHECK(run({"run", "--poly", "x1 + x3", "--center", "0,0"}).code == cli::kInvalidInput);
    CHECK(run({"ca", "--poly", "x1^2+x2^2-1", "--oracle", "bogus:1"}).code == cli::kInvalidInput);
  }

  TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"run"}).code == cli::kUsage);
    CHECK(run({"run", "--poly", "x1", "--frobnicate"}).code == cli::kUsage);
    CHECK(run({"launch"}).code == cli::kUsage);
  }

  TEST_CASE("strict mode exits with 3 on capped runs") {
    const Outcome o = run({"run", "--poly", "x1^2-x2^2", "--max-depth", "8", "--strict"});
    CHECK(o.code == cli::kDepthCapped);
    CHECK(has(o.out, "capped_leaf: "));
    CHECK(run({"run", "--poly", "x1^2-x2^2", "--max-depth", "8"}).code == cli::kOk);
  }

  TEST_CASE("unwritable output exits with 4") {
    const Outcome o = run({"run", "--poly", "x1", "--records", "/nonexistent-dir/sub/records.txt"});
    CHECK(o.code == cli::kIoError);
  }

  TEST_CASE("records written by run read back") {
    const auto path = scratch("circle.records");
    CHECK(run({"run", "--poly", "x1^2+x2^2-1", "--records", path.string()}).code == cli::kOk);
    std::ifstream in(path);
    const RecordSet rs = read_records(in);
    CHECK(rs.terminal.size() == 76);
    CHECK(rs.counts.depth_capped == 0);
  }

  TEST_CASE("mesh reports loops") {
    const auto mesh_path = scratch("two.mesh");
    const auto svg_path = scratch("two.svg");
    const Outcome one = run({"mesh", "--poly", "x1^2+x2^2-1"});
    CHECK(one.code == cli::kOk);
    CHECK(has(one.out, "loops: 1\n"));
    const Outcome two = run({"mesh", "--poly", "(x1-3)^2", "--halfwidth", "8"});
    CHECK(two.code == cli::kInvalidInput);
    const Outcome ok = run({"mesh", "--poly",
                            "x1^4 + 2 x1^2 x2^2 + x2^4 - 20 x1^2 + 16 x2^2 + 64", "--halfwidth", "8", "--mesh",
                            mesh_path.string(), "--svg", svg_path.string()});
    CHECK(ok.code == cli::kOk);
    CHECK(has(ok.out, "loops: 2\n"));
    std::ifstream in(mesh_path);
    const Mesh2D m = read_mesh(in);
    CHECK(m.vertices.size() == m.segments.size());
    CHECK(std::filesystem::file_size(svg_path) > 0);
    const Outcome flat = run({"mesh", "--poly", "7"});
    CHECK(flat.code == cli::kOk);
    CHECK(has(flat.out, "vertices: 0\n"));
  }

  TEST_CASE("mesh refuses capped runs") {
    CHECK(run({"mesh", "--poly", "x1^2-x2^2", "--max-depth", "6"}).code == cli::kDepthCapped);
    CHECK(run({"mesh", "--poly", "x1+x2+x3", "--center", "0,0,0"}).code == cli::kInvalidInput);
  }

  TEST_CASE("bound reports") {
    const Outcome orc = run({"bound", "--poly", "x1^2+x2^2-1/16", "--oracle", "circle-minus:1/4"});
    CHECK(orc.code == cli::kOk);
    CHECK(has(orc.out, "mode: oracle\n"));
    CHECK(has(orc.out, "delta_source: oracle minimization"));
    const Outcome rig = run({"bound", "--poly", "x1^2+x2^2-1", "--halfwidth", "1", "--mode", "rigorous"});
    CHECK(rig.code == cli::kOk);
    CHECK(has(rig.out, "H: 1\n"));
    CHECK(has(rig.out, "k: "));
    const Outcome lin = run({"bound", "--poly", "x1+x2", "--mode", "rigorous"});
    CHECK(has(lin.out, "vacuous: true\n"));
    CHECK(run({"bound", "--poly", "x1^2", "--mode", "sideways"}).code == cli::kUsage);
    CHECK(run({"bound", "--poly", "x1^2+x2^2-1"}).code == cli::kInvalidInput);
  }

  TEST_CASE("ca reports") {
    const Outcome plus =
        run({"ca", "--poly", "x1^2+x2^2+1/16", "--oracle", "circle-plus:1/4", "--with-run"});
    CHECK(plus.code == cli::kOk);
    CHECK(has(plus.out, "region_converged: true\n"));
    CHECK(has(plus.out, "region_diverged: false\n"));
    CHECK(has(plus.out, "observed_terminal: 52\n"));
  }

  TEST_CASE("bench table") {
    const Outcome o = run({"bench", "circle_plus", "--param", "1/2", "--param", "1/4"});
    CHECK(o.code == cli::kOk);
    CHECK(has(o.out, "family param terminal capped lower_bound ca_value\n"));
    CHECK(has(o.out, "circle_plus 1/2 40 0 - "));
    CHECK(has(o.out, "circle_plus 1/4 52 0 - "));
    const Outcome m = run({"bench", "mignotte", "--param", "2", "--no-ca"});
    CHECK(m.code == cli::kOk);
    CHECK(has(m.out, "mignotte 2 1672 0 5.656854249 -\n"));
    CHECK(run({"bench", "spirals"}).code == cli::kUsage);
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"run", "--poly", "x1^3-x1 x2+1/5", "--jobs", "3"};
    CHECK(run(args).out == run(args).out);
    CHECK(run(args).out == run({"run", "--poly", "x1^3-x1 x2+1/5", "--jobs", "1"}).out);
  }
}
