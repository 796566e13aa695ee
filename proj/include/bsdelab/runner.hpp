#pragma once

#include <string>

#include "bsdelab/config.hpp"

namespace bsdelab {

struct RunnerOptions {
  std::string out_dir = "out";
  int threads = 0;
};

/// Execute one experiment and write report.json, report.csv, manifest.json
/// (and field.csv for solve runs) into out_dir. Returns 0 when every pass
/// flag in the report is true, 2 otherwise. Configuration and I/O problems
/// throw (the CLI maps them to exit code 1). Outputs are byte-identical for
/// identical (config, seed, version) regardless of thread count.
int run_experiment(const ExperimentConfig& config, const RunnerOptions& options);

/// Re-parse a previously emitted report/manifest/field file and check its
/// structure. Returns 0 when valid; throws with a description otherwise.
int validate_report_file(const std::string& path);

}  // namespace bsdelab
