#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hermweb/grid.hpp"
#include "hermweb/report.hpp"

namespace hermweb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;

struct CommandOptions {
  std::string command;
  std::optional<std::filesystem::path> spec;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::vector<int> grid;
  std::optional<std::filesystem::path> out;
  bool csv = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> name;
  std::optional<std::int64_t> bound;
  std::optional<complex> t;
};

struct CommandOutcome {
  RunReport report;
  int exit_code = kExitOk;
};

const std::vector<std::string>& command_names();

/// Runs one command. Never throws for input or solver problems: they are
/// encoded in the exit code and the report status.
CommandOutcome run_command(const CommandOptions& options);

}  // namespace hermweb
