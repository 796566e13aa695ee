#include "bsdelab/config.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>

#include "bsdelab/io_util.hpp"

namespace bsdelab {

using nlohmann::json;

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }

void expect_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
}

const json& require_key(const json& j, const std::string& ptr, const char* key) {
  expect_object(j, ptr);
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(child(ptr, key), "missing required field");
  return *it;
}

const json* find_key(const json& j, const std::string& ptr, const char* key) {
  expect_object(j, ptr);
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void reject_unknown(const json& j, const std::string& ptr,
                    std::initializer_list<const char*> allowed) {
  expect_object(j, ptr);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(child(ptr, it.key()), "unknown field");
  }
}

double as_number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw ConfigError(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(ptr, "expected a finite number");
  return x;
}

int as_int(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  const long long x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(ptr, "integer out of range");
  }
  return static_cast<int>(x);
}

bool as_bool(const json& v, const std::string& ptr) {
  if (!v.is_boolean()) throw ConfigError(ptr, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& ptr) {
  if (!v.is_string()) throw ConfigError(ptr, "expected a string");
  return v.get<std::string>();
}

std::uint64_t as_seed(const json& v, const std::string& ptr) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  throw ConfigError(ptr, "expected a non-negative integer");
}

std::vector<double> as_number_array(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw ConfigError(ptr, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], child(ptr, std::to_string(i))));
  }
  return out;
}

/// Run a factory, converting its std::invalid_argument into a ConfigError
/// that names the JSON location being parsed.
template <typename F>
auto rewrap(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ptr, e.what());
  }
}

std::vector<double> strictly_increasing(const json& v, const std::string& ptr) {
  std::vector<double> xs = as_number_array(v, ptr);
  if (xs.empty()) throw ConfigError(ptr, "array must not be empty");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw ConfigError(child(ptr, std::to_string(i)), "values must be strictly increasing");
    }
  }
  return xs;
}

ExperimentKind parse_kind(const json& v, const std::string& ptr) {
  const std::string name = as_string(v, ptr);
  if (name == "envelope_verify") return ExperimentKind::EnvelopeVerify;
  if (name == "solve") return ExperimentKind::Solve;
  if (name == "squeeze") return ExperimentKind::Squeeze;
  if (name == "counterexample_sqrt") return ExperimentKind::CounterexampleSqrt;
  if (name == "counterexample_strict") return ExperimentKind::CounterexampleStrict;
  throw ConfigError(ptr,
                    "unknown experiment '" + name +
                        "' (expected envelope_verify, solve, squeeze, counterexample_sqrt "
                        "or counterexample_strict)");
}

ZGridSpec parse_z_grid(const json& j, const std::string& ptr) {
  reject_unknown(j, ptr, {"min", "max", "step"});
  ZGridSpec spec;
  spec.z_min = as_number(require_key(j, ptr, "min"), child(ptr, "min"));
  spec.z_max = as_number(require_key(j, ptr, "max"), child(ptr, "max"));
  spec.step = as_number(require_key(j, ptr, "step"), child(ptr, "step"));
  if (!(spec.step > 0.0)) throw ConfigError(child(ptr, "step"), "step must be positive");
  if (!(spec.z_max > spec.z_min)) throw ConfigError(child(ptr, "max"), "max must exceed min");
  return spec;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::EnvelopeVerify: return "envelope_verify";
    case ExperimentKind::Solve: return "solve";
    case ExperimentKind::Squeeze: return "squeeze";
    case ExperimentKind::CounterexampleSqrt: return "counterexample_sqrt";
    case ExperimentKind::CounterexampleStrict: return "counterexample_strict";
  }
  return "unknown";
}

Modulus parse_modulus(const json& j, const std::string& ptr) {
  const std::string kind = as_string(require_key(j, ptr, "kind"), child(ptr, "kind"));
  const json* growth = find_key(j, ptr, "growth");
  if (kind == "holder") {
    reject_unknown(j, ptr, {"kind", "scale", "exponent", "growth"});
    const double k = as_number(require_key(j, ptr, "scale"), child(ptr, "scale"));
    const double a = as_number(require_key(j, ptr, "exponent"), child(ptr, "exponent"));
    return rewrap(ptr, [&] {
      return growth ? Modulus::holder(k, a, as_number(*growth, child(ptr, "growth")))
                    : Modulus::holder(k, a);
    });
  }
  if (kind == "linear") {
    reject_unknown(j, ptr, {"kind", "scale", "growth"});
    const double k = as_number(require_key(j, ptr, "scale"), child(ptr, "scale"));
    return rewrap(ptr, [&] {
      return growth ? Modulus::linear(k, as_number(*growth, child(ptr, "growth")))
                    : Modulus::linear(k);
    });
  }
  if (kind == "capped_linear") {
    reject_unknown(j, ptr, {"kind", "scale", "cap", "growth"});
    const double k = as_number(require_key(j, ptr, "scale"), child(ptr, "scale"));
    const double cap = as_number(require_key(j, ptr, "cap"), child(ptr, "cap"));
    return rewrap(ptr, [&] {
      return growth ? Modulus::capped_linear(k, cap, as_number(*growth, child(ptr, "growth")))
                    : Modulus::capped_linear(k, cap);
    });
  }
  throw ConfigError(child(ptr, "kind"),
                    "unknown modulus '" + kind + "' (expected holder, linear or capped_linear)");
}

Generator parse_generator(const json& j, const std::string& ptr) {
  const std::string kind = as_string(require_key(j, ptr, "kind"), child(ptr, "kind"));
  if (kind == "zero") {
    reject_unknown(j, ptr, {"kind"});
    return Generator::zero();
  }
  if (kind == "abs_z") {
    reject_unknown(j, ptr, {"kind", "dim"});
    const json* dim = find_key(j, ptr, "dim");
    return rewrap(ptr, [&] {
      return Generator::abs_z(dim ? as_int(*dim, child(ptr, "dim")) : 1);
    });
  }
  if (kind == "power_z") {
    reject_unknown(j, ptr, {"kind", "scale", "exponent", "dim"});
    const double k = as_number(require_key(j, ptr, "scale"), child(ptr, "scale"));
    const double a = as_number(require_key(j, ptr, "exponent"), child(ptr, "exponent"));
    const json* dim = find_key(j, ptr, "dim");
    return rewrap(ptr, [&] {
      return Generator::power_z(k, a, dim ? as_int(*dim, child(ptr, "dim")) : 1);
    });
  }
  if (kind == "linear_in_z") {
    reject_unknown(j, ptr, {"kind", "mu"});
    std::vector<double> mu = as_number_array(require_key(j, ptr, "mu"), child(ptr, "mu"));
    return rewrap(ptr, [&] { return Generator::linear_in_z(std::move(mu)); });
  }
  if (kind == "sqrt_y") {
    reject_unknown(j, ptr, {"kind"});
    return Generator::sqrt_y();
  }
  if (kind == "tabulated") {
    reject_unknown(j, ptr, {"kind", "knots", "values", "modulus", "growth_bound"});
    std::vector<double> knots =
        as_number_array(require_key(j, ptr, "knots"), child(ptr, "knots"));
    std::vector<double> values =
        as_number_array(require_key(j, ptr, "values"), child(ptr, "values"));
    Modulus m = parse_modulus(require_key(j, ptr, "modulus"), child(ptr, "modulus"));
    const double b =
        as_number(require_key(j, ptr, "growth_bound"), child(ptr, "growth_bound"));
    return rewrap(ptr, [&] {
      return Generator::tabulated(std::move(knots), std::move(values), std::move(m), b);
    });
  }
  throw ConfigError(child(ptr, "kind"),
                    "unknown generator '" + kind +
                        "' (expected zero, abs_z, power_z, linear_in_z, sqrt_y or tabulated)");
}

TerminalCondition parse_terminal(const json& j, const std::string& ptr) {
  const std::string kind = as_string(require_key(j, ptr, "kind"), child(ptr, "kind"));
  if (kind == "polynomial") {
    reject_unknown(j, ptr, {"kind", "coefficients"});
    std::vector<double> coeffs =
        as_number_array(require_key(j, ptr, "coefficients"), child(ptr, "coefficients"));
    return rewrap(ptr, [&] { return TerminalCondition::polynomial(std::move(coeffs)); });
  }
  if (kind == "cosine") {
    reject_unknown(j, ptr, {"kind"});
    return TerminalCondition::cosine();
  }
  if (kind == "quartic_arbitrage") {
    reject_unknown(j, ptr, {"kind", "c"});
    const double c = as_number(require_key(j, ptr, "c"), child(ptr, "c"));
    return rewrap(ptr, [&] { return TerminalCondition::quartic_arbitrage(c); });
  }
  if (kind == "constant") {
    reject_unknown(j, ptr, {"kind", "value"});
    const double c = as_number(require_key(j, ptr, "value"), child(ptr, "value"));
    return rewrap(ptr, [&] { return TerminalCondition::constant(c); });
  }
  throw ConfigError(child(ptr, "kind"),
                    "unknown terminal '" + kind +
                        "' (expected polynomial, cosine, quartic_arbitrage or constant)");
}

GridConfig parse_grid(const json& j, const std::string& ptr) {
  reject_unknown(j, ptr,
                 {"T", "num_time_steps", "domain_half_width", "num_space_points",
                  "lipschitz_cap"});
  GridConfig grid;
  grid.T = as_number(require_key(j, ptr, "T"), child(ptr, "T"));
  grid.num_time_steps =
      as_int(require_key(j, ptr, "num_time_steps"), child(ptr, "num_time_steps"));
  grid.domain_half_width =
      as_number(require_key(j, ptr, "domain_half_width"), child(ptr, "domain_half_width"));
  grid.num_space_points =
      as_int(require_key(j, ptr, "num_space_points"), child(ptr, "num_space_points"));
  grid.lipschitz_cap =
      as_number(require_key(j, ptr, "lipschitz_cap"), child(ptr, "lipschitz_cap"));
  rewrap(ptr, [&] {
    grid.validate();
    return 0;
  });
  return grid;
}

ExperimentConfig parse_experiment_config(const json& j) {
  expect_object(j, "");
  ExperimentConfig cfg;
  cfg.kind = parse_kind(require_key(j, "", "experiment"), "/experiment");
  if (const json* seed = find_key(j, "", "seed")) cfg.seed = as_seed(*seed, "/seed");
  cfg.raw = j;

  switch (cfg.kind) {
    case ExperimentKind::EnvelopeVerify: {
      reject_unknown(j, "", {"experiment", "seed", "generator", "n_list", "z_grid"});
      cfg.generator = parse_generator(require_key(j, "", "generator"), "/generator");
      cfg.n_list = strictly_increasing(require_key(j, "", "n_list"), "/n_list");
      if (const json* zg = find_key(j, "", "z_grid")) cfg.z_grid = parse_z_grid(*zg, "/z_grid");
      break;
    }
    case ExperimentKind::Solve: {
      reject_unknown(j, "", {"experiment", "seed", "generator", "terminal", "grid"});
      cfg.generator = parse_generator(require_key(j, "", "generator"), "/generator");
      cfg.terminal = parse_terminal(require_key(j, "", "terminal"), "/terminal");
      cfg.grid = parse_grid(require_key(j, "", "grid"), "/grid");
      break;
    }
    case ExperimentKind::Squeeze: {
      reject_unknown(j, "",
                     {"experiment", "seed", "generator", "terminal", "grid", "n_ladder",
                      "report_time", "report_paths", "cache"});
      cfg.generator = parse_generator(require_key(j, "", "generator"), "/generator");
      cfg.terminal = parse_terminal(require_key(j, "", "terminal"), "/terminal");
      cfg.grid = parse_grid(require_key(j, "", "grid"), "/grid");
      cfg.n_ladder = strictly_increasing(require_key(j, "", "n_ladder"), "/n_ladder");
      rewrap("/n_ladder", [&] {
        for (double n : cfg.n_ladder) (void)search_radius(*cfg.generator, n);
        return 0;
      });
      if (cfg.grid->lipschitz_cap < cfg.n_ladder.back()) {
        throw ConfigError("/grid/lipschitz_cap",
                          "must cover the ladder's top n so the stability contract holds for "
                          "every envelope");
      }
      if (const json* rt = find_key(j, "", "report_time")) {
        cfg.report_time = as_number(*rt, "/report_time");
        if (cfg.report_time < 0.0) throw ConfigError("/report_time", "must be non-negative");
      }
      if (const json* rp = find_key(j, "", "report_paths")) {
        cfg.report_paths = as_int(*rp, "/report_paths");
        if (cfg.report_paths < 2) throw ConfigError("/report_paths", "must be at least 2");
      }
      if (const json* cache = find_key(j, "", "cache")) cfg.cache = as_bool(*cache, "/cache");
      break;
    }
    case ExperimentKind::CounterexampleSqrt: {
      reject_unknown(j, "", {"experiment", "seed", "c_values", "num_time_steps"});
      cfg.c_values = as_number_array(require_key(j, "", "c_values"), "/c_values");
      if (cfg.c_values.empty()) throw ConfigError("/c_values", "array must not be empty");
      for (std::size_t i = 0; i < cfg.c_values.size(); ++i) {
        const double c = cfg.c_values[i];
        if (!(c >= 0.0 && c <= 1.0)) {
          throw ConfigError(child("/c_values", std::to_string(i)), "c must lie in [0, 1]");
        }
      }
      cfg.num_time_steps = as_int(require_key(j, "", "num_time_steps"), "/num_time_steps");
      if (cfg.num_time_steps < 1) throw ConfigError("/num_time_steps", "must be at least 1");
      break;
    }
    case ExperimentKind::CounterexampleStrict: {
      reject_unknown(j, "", {"experiment", "seed", "c", "grid", "num_paths"});
      cfg.c = as_number(require_key(j, "", "c"), "/c");
      cfg.grid = parse_grid(require_key(j, "", "grid"), "/grid");
      cfg.num_paths = as_int(require_key(j, "", "num_paths"), "/num_paths");
      if (cfg.num_paths < 2) throw ConfigError("/num_paths", "must be at least 2");
      break;
    }
  }
  return cfg;
}

void apply_override(json& j, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("", "override '" + assignment + "' is not of the form path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string value_text = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(value_text);
  } catch (const json::parse_error&) {
    value = value_text;  // unquoted strings are taken literally
  }

  std::vector<std::string> tokens;
  std::string tok;
  for (char ch : path) {
    if (ch == '.') {
      tokens.push_back(tok);
      tok.clear();
    } else {
      tok.push_back(ch);
    }
  }
  tokens.push_back(tok);

  std::string ptr;
  for (const std::string& t : tokens) {
    if (t.empty()) throw ConfigError(ptr, "override path has an empty segment");
    ptr += "/" + t;
  }
  if (value.is_array() || value.is_object()) {
    throw ConfigError(ptr, "arrays and objects are not overridable");
  }

  json* node = &j;
  std::string walked;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    walked += "/" + tokens[i];
    if (!node->is_object()) throw ConfigError(walked, "override path crosses a non-object");
    const auto it = node->find(tokens[i]);
    if (it == node->end()) throw ConfigError(walked, "override path does not exist");
    node = &*it;
  }
  if (!node->is_object()) throw ConfigError(ptr, "override path crosses a non-object");
  (*node)[tokens.back()] = value;
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& set_overrides,
                                        std::optional<std::uint64_t> seed_override,
                                        bool use_half_resolution) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("", e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }

  for (const std::string& assignment : set_overrides) apply_override(j, assignment);
  if (seed_override.has_value()) j["seed"] = *seed_override;

  ExperimentConfig cfg = parse_experiment_config(j);

  if (use_half_resolution) {
    if (cfg.grid.has_value()) {
      const GridConfig coarse = rewrap("/grid", [&] { return half_resolution(*cfg.grid); });
      cfg.grid = coarse;
      j["grid"]["num_space_points"] = coarse.num_space_points;
      j["grid"]["num_time_steps"] = coarse.num_time_steps;
    } else if (cfg.kind == ExperimentKind::CounterexampleSqrt) {
      cfg.num_time_steps = std::max(1, cfg.num_time_steps / 2);
      j["num_time_steps"] = cfg.num_time_steps;
    } else {
      throw ConfigError("", "half resolution requires an experiment with a grid");
    }
    cfg.raw = j;
  }
  return cfg;
}

std::string ExperimentConfig::config_hash() const { return fnv1a64_hex(raw.dump()); }

}  // namespace bsdelab
