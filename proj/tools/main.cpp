#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bsdelab/config.hpp"
#include "bsdelab/runner.hpp"
#include "bsdelab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "bsdelab: backward-equation laboratory (envelope regularization, squeeze "
      "experiments, closed-form counterexamples)"};
  app.set_version_flag("--version", bsdelab::kToolVersion);

  std::string config_path;
  std::string out_dir = "out";
  std::string validate_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  bool half_resolution = false;
  int threads = 0;

  app.add_option("--config", config_path, "JSON experiment configuration to run");
  app.add_option("--out", out_dir, "output directory for report/manifest files")
      ->capture_default_str();
  app.add_option("--seed", seed, "override the configuration's seed");
  app.add_option("--set", overrides,
                 "override one scalar config field, as dotted.path=value (repeatable)");
  app.add_flag("--half-resolution", half_resolution,
               "run on the half-resolution companion grid (refinement studies)");
  app.add_option("--validate-report", validate_path,
                 "validate a previously written report/manifest/field file and exit");
  app.add_option("--threads", threads, "worker threads (0 = all hardware threads)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad usage is a configuration error
  }

  try {
    if (!validate_path.empty()) {
      const int rc = bsdelab::validate_report_file(validate_path);
      std::cout << validate_path << ": valid\n";
      return rc;
    }
    if (config_path.empty()) {
      std::cerr << "error: --config is required (or use --validate-report)\n";
      return 1;
    }
    const bsdelab::ExperimentConfig cfg =
        bsdelab::load_experiment_config(config_path, overrides, seed, half_resolution);
    bsdelab::RunnerOptions options;
    options.out_dir = out_dir;
    options.threads = threads;
    const int rc = bsdelab::run_experiment(cfg, options);
    std::cout << bsdelab::experiment_name(cfg.kind) << ": " << (rc == 0 ? "pass" : "FAIL")
              << " (reports in " << out_dir << ", config " << cfg.config_hash() << ")\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
