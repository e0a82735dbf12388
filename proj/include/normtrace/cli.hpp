#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace normtrace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  std::string command;     // field-info, curve, code, minimal, variety, bounds, conics
  std::string subcommand;  // empty for field-info and bounds
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::uint64_t q = 0;
  std::uint32_t r = 2;
  unsigned k = 1;
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;  // 0: command default
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string format = "json";
  std::uint64_t cap = std::uint64_t{1} << 28;
  std::string message;  // hex b,a0,...,ak
  std::string coeffs;   // hex a0,...,ak
  std::string sample_class = "all";
  std::uint64_t trials = 100;
  std::string theorem = "cm";
  std::string variant = "corrected";
  double C = 0;
  bool validate = false;
  std::uint64_t max_rows = 5000;
  bool timing = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

RunResult run(const RunConfig& config);

/// Parses argv-style arguments (without the program name) and runs them.
RunResult run_args(const std::vector<std::string>& args);

}  // namespace normtrace::cli
