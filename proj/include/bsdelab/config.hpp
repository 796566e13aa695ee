#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsdelab/envelope_checks.hpp"
#include "bsdelab/generator.hpp"
#include "bsdelab/grid.hpp"
#include "bsdelab/squeeze.hpp"
#include "bsdelab/terminal.hpp"

namespace bsdelab {

/// Configuration or input error carrying the JSON pointer of the offending
/// field; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message)
      : std::runtime_error("config error at " + (pointer.empty() ? std::string("/") : pointer) +
                           ": " + message),
        pointer_(std::move(pointer)) {}

  [[nodiscard]] const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

enum class ExperimentKind {
  EnvelopeVerify,
  Solve,
  Squeeze,
  CounterexampleSqrt,
  CounterexampleStrict,
};

std::string experiment_name(ExperimentKind kind);

/// Fully validated experiment description. Parsing is strict: every physical
/// parameter is required, unknown keys are rejected, and every error names
/// the JSON pointer of the field it refers to.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Solve;
  std::uint64_t seed = 0;
  nlohmann::json raw;  // canonical effective config (post-override)

  // envelope-verify
  std::optional<Generator> generator;
  std::vector<double> n_list;
  ZGridSpec z_grid;

  // solve / squeeze / counterexample-strict
  std::optional<TerminalCondition> terminal;
  std::optional<GridConfig> grid;

  // squeeze
  std::vector<double> n_ladder;
  double report_time = 0.0;
  int report_paths = 4096;
  bool cache = true;

  // counterexample-sqrt
  std::vector<double> c_values;
  int num_time_steps = 0;

  // counterexample-strict
  double c = 0.0;
  int num_paths = 0;

  [[nodiscard]] std::string config_hash() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& set_overrides,
                                        std::optional<std::uint64_t> seed_override,
                                        bool half_resolution);

/// Apply one "dotted.path=value" override in place (numbers, booleans and
/// strings; arrays are not overridable).
void apply_override(nlohmann::json& j, const std::string& assignment);

Generator parse_generator(const nlohmann::json& j, const std::string& pointer);
Modulus parse_modulus(const nlohmann::json& j, const std::string& pointer);
TerminalCondition parse_terminal(const nlohmann::json& j, const std::string& pointer);
GridConfig parse_grid(const nlohmann::json& j, const std::string& pointer);

}  // namespace bsdelab
