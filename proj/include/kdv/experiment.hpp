#pragma once

#include <exception>
#include <string>

#include "kdv/config.hpp"

namespace kdv {

/// Outcome classes; the numeric values are the CLI exit codes.
enum class RunStatus {
  Ok = 0,
  Internal = 1,
  Divergence = 2,  // iteration divergence or degenerate system
  Config = 3,      // invalid configuration, parity, bad input file
  Blowup = 4,
};

/// Classifies an exception thrown by the library.
RunStatus status_of(const std::exception& e);

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string message;
  long steps_completed = 0;
  double final_time = 0.0;
  double max_relative_mass_drift = 0.0;
  bool truncated = false;  // the run stopped before cfg.steps
};

/// Runs cfg.steps steps. When cfg.out is set, writes into that directory:
///   snapshots.csv    t,x,u for every grid point at steps 0, k*snapshot_every
///                    and the last step
///   diagnostics.csv  step,t,mass,linf_vs_oracle,l2_vs_oracle,iterations,residual
///                    (oracle columns empty unless the initial data is one
///                    soliton)
///   manifest.txt     resolved configuration plus run.* result keys
/// A run that stops early appends a "# truncated ..." line to both CSV files.
/// Never throws; errors are reported through the status.
RunResult run_experiment(const RunConfig& cfg);

struct CompareResult {
  RunStatus status = RunStatus::Ok;
  std::string message;
  long steps_completed = 0;
  double max_linf = 0.0;
};

/// Steps cfg.scheme and `other` side by side from the same initial data and
/// writes `step,t,linf,l2` per step to out_file (skipped when empty).
CompareResult compare_schemes(const RunConfig& cfg, SchemeKind other,
                              const std::string& out_file);

}  // namespace kdv
