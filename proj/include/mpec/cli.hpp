#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mpec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parsed command line. Every report starts with `echo()` so a run can be
/// reproduced from its output.
struct CliConfig {
  std::string command;  // solve, suite, validate-theta, expansion
  std::string problem;
  std::string theta = "one";
  std::string form = "scaled";
  std::optional<double> r;
  double r0 = 1e-1;
  double factor = 0.1;
  double rmin = 1e-6;
  std::size_t start = 0;
  std::string output = "text";  // csv, md, text
  std::string out;              // empty: stdout
  std::uint64_t seed = 42;
  int table = 0;                // 0: pick from theta (one → 1, weibull:1 → 2)
  std::string mode = "continuation";
  std::vector<std::string> problems;
  int samples = 10000;
  bool serial = false;

  double tol_kkt = 1e-8;
  double tol_feas = 1e-8;
  int max_outer = 100;
  int max_inner = 500;
  double penalty_init = 10.0;
  double penalty_growth = 10.0;

  std::string echo() const;
};

/// Entry point used by the executable. Returns 0 on success, 1 when a check
/// or suite row fails, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpec::cli
