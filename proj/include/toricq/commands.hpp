#pragma once

#include "toricq/problem.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricq {

struct RunOptions {
  std::string command;
  std::optional<std::string> problem_path;
  unsigned long long seed = 1;
  long bound = 6;
  std::size_t max_subsets = std::size_t{1} << 20;
  int k = 2;
  std::string selection = "all";
  std::optional<std::string> inner;  // X for eq1-check
  std::size_t samples = 100;
};

/// Exit codes: 0 all verdicts pass, 1 some verdict negative, 2 input error.
struct RunResult {
  int exit_code = 2;
  std::string text;
  std::string json;
  std::string error;  // diagnostics when exit_code == 2
};

const std::vector<std::string>& command_names();
bool command_needs_problem(const std::string& command);

/// Loads the problem file (if the command takes one) and runs the command.
RunResult run_command(const RunOptions& options);
/// Runs the command on an already parsed problem (ignored by oracle-sweep
/// when null).
RunResult run_command(const RunOptions& options, const ProblemFile* problem);

}  // namespace toricq
