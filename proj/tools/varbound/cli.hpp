#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "varbound/report_io.hpp"

namespace varbound::cli {

enum class Command { Bound, Sweep, Compare, Verify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitTrivial = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kMaxOrderSum = 24;

struct RunConfig {
  Command command = Command::Bound;
  std::string dist;
  std::string g;
  int m = 0;
  int n = 1;
  int m_max = 4;
  std::optional<int> tau;
  Format format = Format::Json;
  std::optional<int> quad_size;
  std::optional<double> tol;
  std::string deltas = "0,-1/7,-1/2,-1";
  int max_order = 6;
  int k_max = 20;
};

/// Checks command-specific fields and caps; throws std::invalid_argument.
void validate(const RunConfig& config);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; the executable is a thin wrapper around this.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace varbound::cli
