#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qfreq/corpus.hpp"
#include "qfreq/quadrature.hpp"

namespace qfreq {

/// Parsed run configuration: one JSON file plus command-line overrides.
/// A fixed config and seed give byte-identical artifacts across runs.
struct RunConfig {
  std::string command;  // analyze, verify, blowup, scan, export
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  GridSpec grid;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
  double fd_step = 0.0;  // 0 selects per-operation defaults
  int series_order = 64;
  int cl_fields = 20;  // randomized oscillation-bound instances in verify
  double scan_r_hat = 1.0 / 1024.0;
  std::vector<double> radii;  // profile radii, ascending; empty selects default
  bool use_corpus = false;
  std::vector<FieldSpec> fields;             // inline fields when not use_corpus
  std::vector<std::vector<Complex>> points;  // per-field collapse points (scan)
  Complex blowup_x0{0.0, 0.0};
  bool blowup_x0_set = false;
  std::vector<double> blowup_radii;  // strictly decreasing; empty selects default
  std::filesystem::path export_input;
  std::map<std::string, double> tol;

  double tol_or(const std::string& name, double fallback) const;
};

/// Reads and validates the JSON config for `command`. Unknown top-level
/// keys and malformed values raise config_error naming the offending key.
RunConfig load_run_config(const std::string& command,
                          const std::filesystem::path& config_path);

/// Executes the configured command and writes its artifacts under
/// config.out_dir. Returns 0 when every enabled check passes, 1 when any
/// check fails (failing rows are printed to `log`). Configuration problems
/// throw config_error.
int run_command(const RunConfig& config, std::ostream& log);

}  // namespace qfreq
