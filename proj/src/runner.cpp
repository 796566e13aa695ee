#include "bsdelab/runner.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "bsdelab/counterexamples.hpp"
#include "bsdelab/envelope_checks.hpp"
#include "bsdelab/io_util.hpp"
#include "bsdelab/squeeze.hpp"
#include "bsdelab/version.hpp"

namespace bsdelab {

using nlohmann::json;

namespace {

constexpr int kCertifySamples = 2000;

std::string csv_bool(bool b) { return b ? "true" : "false"; }

struct ExperimentOutput {
  json report;
  std::string report_csv;
  std::string field_csv;  // empty unless the experiment produced a field
  bool pass = false;
};

json to_json(const ResidualReport& r) {
  return json{{"mean_sup", r.mean_sup}, {"max_sup", r.max_sup}, {"num_paths", r.num_paths},
              {"dt", r.dt}};
}

ExperimentOutput run_envelope_verify(const ExperimentConfig& cfg) {
  const Generator& g = *cfg.generator;
  const ModulusCertification mod_cert = certify_modulus(g.modulus(), kCertifySamples, cfg.seed);
  const GeneratorCertification gen_cert = certify_generator(g, kCertifySamples, cfg.seed);
  const EnvelopeVerification ver =
      verify_envelope_properties(g, cfg.n_list, cfg.z_grid, cfg.seed);

  ExperimentOutput out;
  out.pass = ver.pass && mod_cert.pass && gen_cert.pass;

  json rows = json::array();
  std::ostringstream csv;
  csv << "n,lattice_step,radius,max_gap,pointwise_gap_bound\n";
  for (const EnvelopeLadderRow& r : ver.rows) {
    rows.push_back(json{{"n", r.n},
                        {"lattice_step", r.lattice_step},
                        {"radius", r.radius},
                        {"max_gap", r.max_gap},
                        {"pointwise_gap_bound", r.pointwise_gap_bound}});
    csv << format_double17(r.n) << ',' << format_double17(r.lattice_step) << ','
        << format_double17(r.radius) << ',' << format_double17(r.max_gap) << ','
        << format_double17(r.pointwise_gap_bound) << '\n';
  }
  json violations = json::array();
  for (const EnvelopeCheckViolation& v : ver.violations) {
    violations.push_back(json{{"check", v.check},
                              {"n", v.n},
                              {"z1", v.z1},
                              {"z2", v.z2},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
  }
  json moving = json::array();
  for (const MovingPointRow& m : ver.moving_point) {
    moving.push_back(json{
        {"n", m.n}, {"z", m.z}, {"value", m.value}, {"target", m.target}, {"gap", m.gap}});
  }

  out.report["rows"] = rows;
  out.report["violations"] = violations;
  out.report["moving_point"] = moving;
  out.report["modulus_certification"] = json{{"pass", mod_cert.pass},
                                             {"zero_at_origin", mod_cert.zero_at_origin},
                                             {"worst_monotonicity", mod_cert.worst_monotonicity},
                                             {"worst_subadditivity", mod_cert.worst_subadditivity},
                                             {"worst_growth", mod_cert.worst_growth}};
  out.report["generator_certification"] = json{{"pass", gen_cert.pass},
                                               {"worst_growth", gen_cert.worst_growth},
                                               {"worst_continuity", gen_cert.worst_continuity}};
  out.report_csv = csv.str();
  return out;
}

ExperimentOutput run_solve(const ExperimentConfig& cfg, const RunnerOptions& options) {
  SolveOptions solve_opts;
  solve_opts.threads = options.threads;
  const SolutionField field = solve_fd(*cfg.generator, *cfg.terminal, *cfg.grid, solve_opts);

  ExperimentOutput out;
  out.pass = true;  // a solve passes by completing without blow-up
  out.report["y0"] = field.y0();
  out.report["max_abs_y"] = field.max_abs_y();

  std::ostringstream csv;
  csv << "y0,max_abs_y\n"
      << format_double17(field.y0()) << ',' << format_double17(field.max_abs_y()) << '\n';
  out.report_csv = csv.str();

  std::ostringstream field_csv;
  field.write_csv(field_csv);
  out.field_csv = field_csv.str();
  return out;
}

ExperimentOutput run_squeeze_experiment(const ExperimentConfig& cfg,
                                        const RunnerOptions& options) {
  SqueezeConfig sq;
  sq.generator = *cfg.generator;
  sq.terminal = *cfg.terminal;
  sq.grid = *cfg.grid;
  sq.n_ladder = cfg.n_ladder;
  sq.report_time = cfg.report_time;
  sq.report_paths = cfg.report_paths;
  sq.seed = cfg.seed;
  sq.cache = cfg.cache;
  SolveOptions solve_opts;
  solve_opts.threads = options.threads;
  const SqueezeReport rep = run_squeeze(sq, solve_opts);

  ExperimentOutput out;
  out.pass = rep.pass;

  json rows = json::array();
  std::ostringstream csv;
  csv << "n,y_lower0,y_upper0,gap,bound,eps_num,lattice_step,sup_abs_y,"
         "refine_delta_lower,refine_delta_upper,pathwise_mean_gap,pathwise_stderr,pass\n";
  for (const SqueezeRow& r : rep.rows) {
    json row{{"n", r.n},
             {"y_lower0", r.y_lower0},
             {"y_upper0", r.y_upper0},
             {"gap", r.gap},
             {"bound", r.bound},
             {"eps_num", r.eps_num},
             {"pass", r.pass},
             {"lattice_step", r.lattice_step},
             {"sup_abs_y", r.sup_abs_y},
             {"refine_delta_lower", r.refine_delta_lower},
             {"refine_delta_upper", r.refine_delta_upper}};
    if (r.has_pathwise) {
      row["pathwise_mean_gap"] = r.pathwise_mean_gap;
      row["pathwise_stderr"] = r.pathwise_stderr;
      row["pathwise_ok"] = r.pathwise_ok;
    }
    rows.push_back(row);
    csv << format_double17(r.n) << ',' << format_double17(r.y_lower0) << ','
        << format_double17(r.y_upper0) << ',' << format_double17(r.gap) << ','
        << format_double17(r.bound) << ',' << format_double17(r.eps_num) << ','
        << format_double17(r.lattice_step) << ',' << format_double17(r.sup_abs_y) << ','
        << format_double17(r.refine_delta_lower) << ',' << format_double17(r.refine_delta_upper)
        << ',' << (r.has_pathwise ? format_double17(r.pathwise_mean_gap) : std::string()) << ','
        << (r.has_pathwise ? format_double17(r.pathwise_stderr) : std::string()) << ','
        << csv_bool(r.pass && r.pathwise_ok) << '\n';
  }

  json witnesses = json::array();
  for (const MonotoneWitness& w : rep.monotone.witnesses) {
    witnesses.push_back(json{{"what", w.what},
                             {"n_a", w.n_a},
                             {"n_b", w.n_b},
                             {"value_a", w.value_a},
                             {"value_b", w.value_b},
                             {"tolerance", w.tolerance}});
  }

  out.report["rows"] = rows;
  out.report["monotone"] = json{{"pass", rep.monotone.pass}, {"witnesses", witnesses}};
  out.report["certificate"] = json{{"gap_sequence", rep.certificate.gap_sequence},
                                   {"extrapolated_limit", rep.certificate.extrapolated_limit},
                                   {"pass", rep.certificate.pass}};
  out.report["m0_estimate"] = rep.m0_estimate;
  out.report["sup_abs_y"] = rep.sup_abs_y;
  out.report["m0_ok"] = rep.m0_ok;
  out.report["middle_sandwich_checked"] = rep.middle_sandwich_checked;
  out.report["middle_sandwich_ok"] = rep.middle_sandwich_ok;
  out.report_csv = csv.str();
  return out;
}

ExperimentOutput run_counterexample_sqrt(const ExperimentConfig& cfg) {
  ExperimentOutput out;
  const int nt = cfg.num_time_steps;
  const double bound = 2.0 / nt;

  json rows = json::array();
  std::ostringstream csv;
  csv << "c,y0,residual_sup,bound,pass\n";
  std::vector<double> y0s;
  bool all_rows = true;
  for (double c : cfg.c_values) {
    const double y0 = sqrt_family_value(c, 0.0);
    const double residual = verify_sqrt_family(c, nt);
    const bool row_pass = residual <= bound;
    all_rows = all_rows && row_pass;
    y0s.push_back(y0);
    rows.push_back(json{
        {"c", c}, {"y0", y0}, {"residual_sup", residual}, {"bound", bound}, {"pass", row_pass}});
    csv << format_double17(c) << ',' << format_double17(y0) << ',' << format_double17(residual)
        << ',' << format_double17(bound) << ',' << csv_bool(row_pass) << '\n';
  }

  // Distinctness: the family members must genuinely be different solutions of
  // the one equation (same driver, same zero terminal value).
  double min_pairwise = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y0s.size(); ++i) {
    for (std::size_t k = i + 1; k < y0s.size(); ++k) {
      min_pairwise = std::min(min_pairwise, std::fabs(y0s[i] - y0s[k]));
    }
  }
  const bool distinct = y0s.size() < 2 || min_pairwise > 0.0;

  out.report["rows"] = rows;
  out.report["num_time_steps"] = nt;
  out.report["min_pairwise_y0_gap"] = y0s.size() < 2 ? 0.0 : min_pairwise;
  out.report["distinct"] = distinct;
  out.pass = all_rows && distinct;
  out.report_csv = csv.str();
  return out;
}

ExperimentOutput run_counterexample_strict(const ExperimentConfig& cfg,
                                           const RunnerOptions& options) {
  SolveOptions solve_opts;
  solve_opts.threads = options.threads;
  const PathBundle bundle(cfg.seed, cfg.num_paths, cfg.grid->num_time_steps, cfg.grid->T);
  const StrictComparisonReport rep =
      strict_comparison_demo(cfg.c, *cfg.grid, bundle, solve_opts);

  ExperimentOutput out;
  out.pass = rep.pass;
  out.report["c"] = rep.c;
  out.report["y0_numeric"] = rep.y0_numeric;
  out.report["y0_wide"] = rep.y0_wide;
  out.report["domain_sensitivity"] = rep.domain_sensitivity;
  out.report["prob_strictly_below"] = rep.prob_strictly_below;
  out.report["residual"] = to_json(rep.residual_stats);
  out.report["num_paths"] = cfg.num_paths;

  std::ostringstream csv;
  csv << "c,y0_numeric,y0_wide,domain_sensitivity,prob_strictly_below,"
         "residual_mean_sup,residual_max_sup,pass\n";
  csv << format_double17(rep.c) << ',' << format_double17(rep.y0_numeric) << ','
      << format_double17(rep.y0_wide) << ',' << format_double17(rep.domain_sensitivity) << ','
      << format_double17(rep.prob_strictly_below) << ','
      << format_double17(rep.residual_stats.mean_sup) << ','
      << format_double17(rep.residual_stats.max_sup) << ',' << csv_bool(rep.pass) << '\n';
  out.report_csv = csv.str();
  return out;
}

bool is_hex16(const std::string& s) {
  if (s.size() != 16) return false;
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c)) ||
        (std::isalpha(static_cast<unsigned char>(c)) && std::isupper(static_cast<unsigned char>(c)))) {
      return false;
    }
  }
  return true;
}

bool valid_experiment_name(const std::string& s) {
  return s == "envelope_verify" || s == "solve" || s == "squeeze" ||
         s == "counterexample_sqrt" || s == "counterexample_strict";
}

bool csv_field_ok(const std::string& field) {
  if (field.empty() || field == "true" || field == "false") return true;
  const char* begin = field.c_str();
  char* end = nullptr;
  std::strtod(begin, &end);
  return end == begin + field.size();
}

void validate_csv_text(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.empty()) {
    throw std::runtime_error("report validation: " + path + " is empty");
  }
  std::size_t columns = 1;
  for (char c : header) {
    if (c == ',') ++columns;
  }
  std::string line;
  std::size_t line_no = 1;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++data_rows;
    std::size_t count = 0;
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ',')) {
      ++count;
      if (!csv_field_ok(field)) {
        throw std::runtime_error("report validation: " + path + " line " +
                                 std::to_string(line_no) + " has a malformed field '" + field +
                                 "'");
      }
    }
    // A trailing comma means an empty final field getline won't report.
    if (!line.empty() && line.back() == ',') ++count;
    if (count != columns) {
      throw std::runtime_error("report validation: " + path + " line " +
                               std::to_string(line_no) + " has " + std::to_string(count) +
                               " fields, expected " + std::to_string(columns));
    }
  }
  if (data_rows == 0) {
    throw std::runtime_error("report validation: " + path + " has a header but no rows");
  }
}

void validate_json_text(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("report validation: " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw std::runtime_error("report validation: " + path + " must hold a JSON object");
  }
  const bool is_manifest = j.contains("tool_version");
  const auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) {
      throw std::runtime_error("report validation: " + path + " is missing '" + key + "'");
    }
    return j.at(key);
  };
  const json& exp = need("experiment");
  if (!exp.is_string() || !valid_experiment_name(exp.get<std::string>())) {
    throw std::runtime_error("report validation: " + path + " has an unknown experiment name");
  }
  const json& hash = need("config_hash");
  if (!hash.is_string() || !is_hex16(hash.get<std::string>())) {
    throw std::runtime_error("report validation: " + path +
                             " config_hash must be 16 lowercase hex digits");
  }
  if (!need("seed").is_number_integer() && !need("seed").is_number_unsigned()) {
    throw std::runtime_error("report validation: " + path + " seed must be an integer");
  }
  if (is_manifest) {
    if (!j.at("tool_version").is_string() || j.at("tool_version").get<std::string>().empty()) {
      throw std::runtime_error("report validation: " + path + " tool_version must be a string");
    }
  } else if (!need("pass").is_boolean()) {
    throw std::runtime_error("report validation: " + path + " pass must be a boolean");
  }
}

}  // namespace

int run_experiment(const ExperimentConfig& config, const RunnerOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);

  ExperimentOutput out;
  switch (config.kind) {
    case ExperimentKind::EnvelopeVerify:
      out = run_envelope_verify(config);
      break;
    case ExperimentKind::Solve:
      out = run_solve(config, options);
      break;
    case ExperimentKind::Squeeze:
      out = run_squeeze_experiment(config, options);
      break;
    case ExperimentKind::CounterexampleSqrt:
      out = run_counterexample_sqrt(config);
      break;
    case ExperimentKind::CounterexampleStrict:
      out = run_counterexample_strict(config, options);
      break;
  }

  const std::string hash = config.config_hash();
  out.report["experiment"] = experiment_name(config.kind);
  out.report["seed"] = config.seed;
  out.report["config_hash"] = hash;
  out.report["pass"] = out.pass;

  const json manifest{{"config_hash", hash},
                      {"experiment", experiment_name(config.kind)},
                      {"seed", config.seed},
                      {"tool_version", kToolVersion}};

  const fs::path dir(options.out_dir);
  write_text_file((dir / "report.json").string(), out.report.dump(2) + "\n");
  write_text_file((dir / "report.csv").string(), out.report_csv);
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  if (!out.field_csv.empty()) {
    write_text_file((dir / "field.csv").string(), out.field_csv);
  }
  return out.pass ? 0 : 2;
}

int validate_report_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".json") {
    validate_json_text(text, path);
  } else if (ext == ".csv") {
    validate_csv_text(text, path);
  } else {
    throw std::runtime_error("report validation: unsupported file type '" + ext +
                             "' (expected .json or .csv)");
  }
  return 0;
}

}  // namespace bsdelab
