#pragma once

#include <string>
#include <vector>

#include "dnsphere/harness/config.hpp"
#include "dnsphere/harness/output.hpp"

namespace dnsphere {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct CommandResult {
  std::vector<Table> tables;
  std::vector<std::string> summary;  // human-readable lines for stdout
  int exit_code = kExitOk;
};

CommandResult cmd_apply(const RunConfig& cfg);
CommandResult cmd_derivative_check(const RunConfig& cfg);
CommandResult cmd_radius(const RunConfig& cfg);
CommandResult cmd_tame(const RunConfig& cfg);
CommandResult cmd_norms(const RunConfig& cfg);
CommandResult cmd_witness(const RunConfig& cfg);

// Dispatches on cfg.command after validation. Config problems raise
// ConfigError; numerical failures of single samples are recorded in the
// tables and reported through exit_code.
CommandResult run_command(const RunConfig& cfg);

// Runs fn(i) for i < count on up to `threads` workers.
template <class F>
void parallel_for(int count, int threads, F&& fn);

}  // namespace dnsphere

#include "dnsphere/harness/parallel.inl"
