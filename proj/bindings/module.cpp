#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bsdelab/config.hpp"
#include "bsdelab/counterexamples.hpp"
#include "bsdelab/envelope.hpp"
#include "bsdelab/envelope_checks.hpp"
#include "bsdelab/fd_solver.hpp"
#include "bsdelab/generator.hpp"
#include "bsdelab/grid.hpp"
#include "bsdelab/modulus.hpp"
#include "bsdelab/paths.hpp"
#include "bsdelab/runner.hpp"
#include "bsdelab/squeeze.hpp"
#include "bsdelab/terminal.hpp"
#include "bsdelab/version.hpp"

namespace py = pybind11;
using namespace bsdelab;

namespace {

SolveOptions make_options(int threads, bool cache) {
  SolveOptions opts;
  opts.threads = threads;
  opts.cache = cache;
  return opts;
}

py::dict row_to_dict(const SqueezeRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["y_lower0"] = r.y_lower0;
  d["y_upper0"] = r.y_upper0;
  d["gap"] = r.gap;
  d["bound"] = r.bound;
  d["eps_num"] = r.eps_num;
  d["pass"] = r.pass;
  d["lattice_step"] = r.lattice_step;
  d["sup_abs_y"] = r.sup_abs_y;
  d["refine_delta_lower"] = r.refine_delta_lower;
  d["refine_delta_upper"] = r.refine_delta_upper;
  if (r.has_pathwise) {
    d["pathwise_mean_gap"] = r.pathwise_mean_gap;
    d["pathwise_stderr"] = r.pathwise_stderr;
    d["pathwise_ok"] = r.pathwise_ok;
  }
  return d;
}

py::dict residual_to_dict(const ResidualReport& r) {
  py::dict d;
  d["mean_sup"] = r.mean_sup;
  d["max_sup"] = r.max_sup;
  d["num_paths"] = r.num_paths;
  d["dt"] = r.dt;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Backward-equation laboratory: Lipschitz envelopes, an explicit "
            "finite-difference sweep, squeeze experiments and closed-form "
            "counterexamples.";
  m.attr("__version__") = kToolVersion;

  py::class_<Modulus>(m, "Modulus",
                      "Certified modulus of continuity with a declared linear growth bound.")
      .def_static("holder", py::overload_cast<double, double, double>(&Modulus::holder),
                  py::arg("scale"), py::arg("exponent"), py::arg("growth"))
      .def_static("holder", py::overload_cast<double, double>(&Modulus::holder),
                  py::arg("scale"), py::arg("exponent"))
      .def_static("linear", py::overload_cast<double, double>(&Modulus::linear),
                  py::arg("scale"), py::arg("growth"))
      .def_static("linear", py::overload_cast<double>(&Modulus::linear), py::arg("scale"))
      .def_static("capped_linear",
                  py::overload_cast<double, double, double>(&Modulus::capped_linear),
                  py::arg("scale"), py::arg("cap"), py::arg("growth"))
      .def_static("capped_linear", py::overload_cast<double, double>(&Modulus::capped_linear),
                  py::arg("scale"), py::arg("cap"))
      .def("__call__", &Modulus::operator(), py::arg("x"))
      .def_property_readonly("growth_constant", &Modulus::growth_constant);

  py::class_<Generator>(m, "Generator",
                        "Driver g(t, z) together with its declared growth/continuity bounds.")
      .def_static("zero", &Generator::zero)
      .def_static("abs_z", &Generator::abs_z, py::arg("dim") = 1)
      .def_static("power_z", &Generator::power_z, py::arg("scale"), py::arg("exponent"),
                  py::arg("dim") = 1)
      .def_static("linear_in_z", &Generator::linear_in_z, py::arg("mu"))
      .def_static("sqrt_y", &Generator::sqrt_y)
      .def("eval1", &Generator::eval1, py::arg("t"), py::arg("z"))
      .def_property_readonly("dim", &Generator::dim)
      .def_property_readonly("combined_constant", &Generator::combined_constant)
      .def_property_readonly("lipschitz_constant",
                             [](const Generator& g) { return g.lipschitz_constant(); })
      .def_property_readonly("depends_on_y", &Generator::depends_on_y);

  m.def("search_radius", py::overload_cast<const Generator&, double>(&search_radius),
        py::arg("generator"), py::arg("n"),
        "Radius 2C/(n - C) of the envelope's candidate ball; n must exceed C.");
  m.def("envelope_gap_bound", &envelope_gap_bound, py::arg("generator"), py::arg("n"),
        py::arg("T"), "Closed-form bound 2 * modulus(2C/(n-C)) * T on the squeeze gap.");

  py::enum_<EnvelopeSide>(m, "EnvelopeSide")
      .value("Lower", EnvelopeSide::Lower)
      .value("Upper", EnvelopeSide::Upper);

  py::class_<Envelope>(m, "Envelope",
                       "n-Lipschitz inf/sup envelope of a driver over an absolute lattice.")
      .def(py::init<Generator, double, EnvelopeSide, double>(), py::arg("base"), py::arg("n"),
           py::arg("side"), py::arg("lattice_step") = 0.0)
      .def("eval1", &Envelope::eval1, py::arg("t"), py::arg("z"))
      .def_property_readonly("n", &Envelope::n)
      .def_property_readonly("radius", &Envelope::radius)
      .def_property_readonly("lattice_step", &Envelope::lattice_step)
      .def_static("default_lattice_step", &Envelope::default_lattice_step,
                  py::arg("combined_constant"), py::arg("n"));

  py::class_<TerminalCondition>(m, "TerminalCondition", "Terminal datum Phi(x).")
      .def_static("polynomial", &TerminalCondition::polynomial, py::arg("coefficients"))
      .def_static("cosine", &TerminalCondition::cosine)
      .def_static("quartic_arbitrage", &TerminalCondition::quartic_arbitrage, py::arg("c"))
      .def_static("constant", &TerminalCondition::constant, py::arg("value"))
      .def("__call__", &TerminalCondition::operator(), py::arg("x"));

  py::class_<GridConfig>(m, "GridConfig",
                         "Space-time grid; dt must satisfy min(0.4*dx^2, dx/(2*cap)).")
      .def(py::init([](double T, int num_time_steps, double domain_half_width,
                       int num_space_points, double lipschitz_cap) {
             GridConfig g;
             g.T = T;
             g.num_time_steps = num_time_steps;
             g.domain_half_width = domain_half_width;
             g.num_space_points = num_space_points;
             g.lipschitz_cap = lipschitz_cap;
             return g;
           }),
           py::arg("T"), py::arg("num_time_steps"), py::arg("domain_half_width"),
           py::arg("num_space_points"), py::arg("lipschitz_cap"))
      .def_readwrite("T", &GridConfig::T)
      .def_readwrite("num_time_steps", &GridConfig::num_time_steps)
      .def_readwrite("domain_half_width", &GridConfig::domain_half_width)
      .def_readwrite("num_space_points", &GridConfig::num_space_points)
      .def_readwrite("lipschitz_cap", &GridConfig::lipschitz_cap)
      .def("dx", &GridConfig::dx)
      .def("dt", &GridConfig::dt)
      .def("cfl_limit", &GridConfig::cfl_limit)
      .def("validate", &GridConfig::validate);

  m.def("half_resolution", &half_resolution, py::arg("grid"),
        "Companion grid at half the spatial resolution (stable time step re-chosen).");
  m.def("min_time_steps", &min_time_steps, py::arg("T"), py::arg("dx"), py::arg("lipschitz_cap"));

  m.def(
      "solve_fd",
      [](const Generator& g, const TerminalCondition& phi, const GridConfig& grid, int threads,
         bool cache) {
        const SolveSummary s = solve_fd_summary(make_driver(g), phi, grid,
                                                make_options(threads, cache));
        py::dict d;
        d["y0"] = s.y0;
        d["max_abs_y"] = s.max_abs_y;
        return d;
      },
      py::arg("generator"), py::arg("terminal"), py::arg("grid"), py::arg("threads") = 0,
      py::arg("cache") = true,
      "Backward explicit sweep; returns {'y0', 'max_abs_y'}.");

  m.def(
      "solve_fd_envelope",
      [](const Envelope& e, const TerminalCondition& phi, const GridConfig& grid, int threads,
         bool cache) {
        const SolveSummary s = solve_fd_summary(make_driver(e), phi, grid,
                                                make_options(threads, cache));
        py::dict d;
        d["y0"] = s.y0;
        d["max_abs_y"] = s.max_abs_y;
        return d;
      },
      py::arg("envelope"), py::arg("terminal"), py::arg("grid"), py::arg("threads") = 0,
      py::arg("cache") = true,
      "Backward sweep driven by an envelope; returns {'y0', 'max_abs_y'}.");

  py::class_<PathBundle>(m, "PathBundle",
                         "Deterministic per-path-seeded Brownian increment bundle.")
      .def(py::init<std::uint64_t, int, int, double>(), py::arg("seed"), py::arg("num_paths"),
           py::arg("num_steps"), py::arg("T"))
      .def_static("zero_noise", &PathBundle::zero_noise, py::arg("num_paths"),
                  py::arg("num_steps"), py::arg("T"))
      .def("terminal_values", &PathBundle::terminal_values, py::arg("threads") = 0)
      .def_property_readonly("num_paths", &PathBundle::num_paths)
      .def_property_readonly("num_steps", &PathBundle::num_steps)
      .def_property_readonly("horizon", &PathBundle::horizon)
      .def_property_readonly("dt", &PathBundle::dt);

  m.def(
      "path_bundle_stats",
      [](const PathBundle& bundle, int threads) {
        const PathStats s = path_bundle_stats(bundle, threads);
        py::dict d;
        d["mean_terminal"] = s.mean_terminal;
        d["var_terminal"] = s.var_terminal;
        d["mean_within_tolerance"] = s.mean_within_tolerance;
        return d;
      },
      py::arg("bundle"), py::arg("threads") = 0,
      "Terminal-value statistics of a bundle; returns a dict.");

  m.def(
      "verify_envelope_properties",
      [](const Generator& g, const std::vector<double>& n_list, double z_min, double z_max,
         double step, std::uint64_t seed) {
        const EnvelopeVerification v =
            verify_envelope_properties(g, n_list, ZGridSpec{z_min, z_max, step}, seed);
        py::list rows;
        for (const EnvelopeLadderRow& r : v.rows) {
          py::dict d;
          d["n"] = r.n;
          d["lattice_step"] = r.lattice_step;
          d["radius"] = r.radius;
          d["max_gap"] = r.max_gap;
          d["pointwise_gap_bound"] = r.pointwise_gap_bound;
          rows.append(d);
        }
        py::list moving;
        for (const MovingPointRow& r : v.moving_point) {
          py::dict d;
          d["n"] = r.n;
          d["z"] = r.z;
          d["value"] = r.value;
          d["target"] = r.target;
          d["gap"] = r.gap;
          moving.append(d);
        }
        py::dict out;
        out["pass"] = v.pass;
        out["rows"] = rows;
        out["moving_point"] = moving;
        out["num_violations"] = v.violations.size();
        return out;
      },
      py::arg("generator"), py::arg("n_list"), py::arg("z_min") = -3.0, py::arg("z_max") = 3.0,
      py::arg("step") = 0.05, py::arg("seed") = 0,
      "Envelope ladder property suite; returns {'pass', 'rows', 'num_violations'}.");

  m.def(
      "run_squeeze",
      [](const Generator& g, const TerminalCondition& phi, const GridConfig& grid,
         const std::vector<double>& n_ladder, double report_time, int report_paths,
         std::uint64_t seed, bool cache, int threads) {
        SqueezeConfig cfg;
        cfg.generator = g;
        cfg.terminal = phi;
        cfg.grid = grid;
        cfg.n_ladder = n_ladder;
        cfg.report_time = report_time;
        cfg.report_paths = report_paths;
        cfg.seed = seed;
        cfg.cache = cache;
        const SqueezeReport rep = run_squeeze(cfg, make_options(threads, cache));
        py::list rows;
        for (const SqueezeRow& r : rep.rows) rows.append(row_to_dict(r));
        py::dict cert;
        cert["gap_sequence"] = rep.certificate.gap_sequence;
        cert["extrapolated_limit"] = rep.certificate.extrapolated_limit;
        cert["pass"] = rep.certificate.pass;
        py::dict out;
        out["rows"] = rows;
        out["monotone_pass"] = rep.monotone.pass;
        out["certificate"] = cert;
        out["m0_estimate"] = rep.m0_estimate;
        out["sup_abs_y"] = rep.sup_abs_y;
        out["m0_ok"] = rep.m0_ok;
        out["middle_sandwich_checked"] = rep.middle_sandwich_checked;
        out["middle_sandwich_ok"] = rep.middle_sandwich_ok;
        out["pass"] = rep.pass;
        return out;
      },
      py::arg("generator"), py::arg("terminal"), py::arg("grid"), py::arg("n_ladder"),
      py::arg("report_time") = 0.0, py::arg("report_paths") = 4096, py::arg("seed") = 0,
      py::arg("cache") = true, py::arg("threads") = 0,
      "Envelope squeeze experiment; returns the full report as nested dicts.");

  m.def("sqrt_family_value", &sqrt_family_value, py::arg("c"), py::arg("t"),
        "Closed-form family member value y_c(t) = max(0, (c-t)/2)^2.");
  m.def("verify_sqrt_family", &verify_sqrt_family, py::arg("c"), py::arg("num_time_steps"),
        "Max backward-identity defect of the family member on a uniform grid.");
  m.def(
      "verify_quartic_solution",
      [](double c, std::uint64_t seed, int num_paths, int num_steps, double T, int threads) {
        return residual_to_dict(
            verify_quartic_solution(c, PathBundle(seed, num_paths, num_steps, T), threads));
      },
      py::arg("c"), py::arg("seed"), py::arg("num_paths"), py::arg("num_steps"), py::arg("T"),
      py::arg("threads") = 0,
      "Pathwise residual of the quartic closed-form pair; returns a dict.");
  m.def(
      "strict_comparison_demo",
      [](double c, const GridConfig& grid, std::uint64_t seed, int num_paths, int threads) {
        const StrictComparisonReport rep = strict_comparison_demo(
            c, grid, PathBundle(seed, num_paths, grid.num_time_steps, grid.T),
            make_options(threads, true));
        py::dict d;
        d["c"] = rep.c;
        d["y0_numeric"] = rep.y0_numeric;
        d["y0_wide"] = rep.y0_wide;
        d["domain_sensitivity"] = rep.domain_sensitivity;
        d["prob_strictly_below"] = rep.prob_strictly_below;
        d["residual"] = residual_to_dict(rep.residual_stats);
        d["pass"] = rep.pass;
        return d;
      },
      py::arg("c"), py::arg("grid"), py::arg("seed"), py::arg("num_paths"),
      py::arg("threads") = 0,
      "Strict-comparison failure demo; returns the report as a dict.");

  m.def(
      "run_experiment_file",
      [](const std::string& config_path, const std::string& out_dir,
         std::optional<std::uint64_t> seed, const std::vector<std::string>& set_overrides,
         bool half_resolution, int threads) {
        const ExperimentConfig cfg =
            load_experiment_config(config_path, set_overrides, seed, half_resolution);
        RunnerOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads;
        return run_experiment(cfg, opts);
      },
      py::arg("config_path"), py::arg("out_dir"), py::arg("seed") = py::none(),
      py::arg("set_overrides") = std::vector<std::string>{}, py::arg("half_resolution") = false,
      py::arg("threads") = 0,
      "Load a JSON experiment config, run it, write the report bundle; returns the exit code.");
  m.def("validate_report_file", &validate_report_file, py::arg("path"),
        "Validate a previously written report/manifest/field file (throws on problems).");
}
