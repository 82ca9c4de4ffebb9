// Command implementations behind the ddsub executable. Each writes its
// report to `out`, diagnostics to `err`, and returns the process exit code.

#ifndef DDSUB_TOOLS_COMMANDS_HPP
#define DDSUB_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ddsub::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInput = 2,
  kDepthCapped = 3,
  kIoError = 4,
};

struct Options {
  std::string poly;
  std::string center = "0,0";
  std::string halfwidth = "2";
  unsigned max_depth = 24;
  unsigned jobs = 1;
  bool strict = false;
  std::string svg_path;
  std::string records_path;
  std::string mesh_path;
  std::string oracle;
  std::string mode = "oracle";
  bool with_run = false;
  std::uint64_t seed = 1;
};

int cmd_run(const Options& o, std::ostream& out, std::ostream& err);
int cmd_mesh(const Options& o, std::ostream& out, std::ostream& err);
int cmd_bound(const Options& o, std::ostream& out, std::ostream& err);
int cmd_ca(const Options& o, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string family;
  /// Family parameters; empty means the default sweep.
  std::vector<std::string> params;
  unsigned max_depth = 24;
  unsigned jobs = 1;
  bool with_ca = true;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ddsub::cli

#endif  // DDSUB_TOOLS_COMMANDS_HPP
