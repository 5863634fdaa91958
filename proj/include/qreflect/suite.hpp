#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qreflect/report.hpp"

namespace qreflect {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full run description: suite selector, parameter grid, explicit or drawn
/// scalar parameters, mode, seed, and output shape.
struct RunConfig {
  std::string suite = "all";
  std::vector<int> Ns = {2, 3};
  std::vector<long> ms = {0, 1, 2};
  std::vector<int> as;  // empty with a_all -> every admissible split per check
  bool a_all = true;
  std::vector<long> gradation;  // empty -> principal
  // scalar parameters as strings; empty means "draw from the seeded stream"
  std::string q, q_root, x, y, u, v, eps_plus, eps_minus, p;
  Mode mode = Mode::exact;
  uint64_t seed = 1;
  int repetitions = 3;
  std::string format = "text";  // json | text
  std::string output;           // empty -> stdout
  std::string config_file;
  bool negative_control = false;
};

/// Parse the arguments of the `verify` subcommand (everything after the
/// subcommand word). Values from --config <file> (line-based key=value with
/// optional [section] headers) are applied first; explicit flags win.
/// Throws config_error on unknown keys, malformed values, or exact-mode
/// decimals.
RunConfig parse_verify_args(const std::vector<std::string>& args);

struct SuiteResult {
  std::vector<CheckResult> checks;
  int exit_code = 0;
};

/// Execute every check job selected by the config over its parameter grid.
/// Deterministic for a fixed (config, seed): each job draws from its own
/// stream seeded by the job identity, results are emitted in job order
/// regardless of scheduling, and QREFLECT_THREADS caps the worker count.
/// Parameter draws that hit a vanishing factor are redrawn and logged as
/// skipped rows.
SuiteResult run_suite(const RunConfig& cfg);

/// Number of jobs run_suite will schedule for this config.
size_t predicted_job_count(const RunConfig& cfg);

/// Serialize results: json is the fixed-key-order object
/// {version, config, summary, checks}, text is one aligned line per row
/// followed by a summary line. Always LF line endings.
std::string emit_report(const RunConfig& cfg, const std::vector<CheckResult>& checks,
                        const std::string& format);

std::vector<std::string> suite_names();

}  // namespace qreflect
