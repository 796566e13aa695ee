#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsdelab/fd_solver.hpp"
#include "bsdelab/generator.hpp"
#include "bsdelab/grid.hpp"
#include "bsdelab/terminal.hpp"

namespace bsdelab {

/// Squeeze experiment: for each n in the ladder, solve the backward equation
/// with the lower and the upper n-Lipschitz envelope of the driver and track
/// how the two initial values pinch together as n grows.
struct SqueezeConfig {
  Generator generator = Generator::zero();
  TerminalCondition terminal = TerminalCondition::constant(0.0);
  GridConfig grid;
  std::vector<double> n_ladder;   // strictly increasing, all > C
  double report_time = 0.0;       // extra pathwise spread estimate when > 0
  int report_paths = 4096;
  std::uint64_t seed = 0;
  bool cache = true;

  void validate() const;  // also requires grid.lipschitz_cap >= max n
};

struct SqueezeRow {
  double n = 0.0;
  double y_lower0 = 0.0;
  double y_upper0 = 0.0;
  double gap = 0.0;       // y_upper0 - y_lower0
  double bound = 0.0;     // 2 * modulus(2C/(n-C)) * T
  double eps_num = 0.0;   // refinement proxy + lattice slack 2*n*h*T
  bool pass = false;      // -eps_num <= gap <= bound + eps_num
  double lattice_step = 0.0;
  double sup_abs_y = 0.0;
  double refine_delta_lower = 0.0;  // |y0(full) - y0(half)| per side
  double refine_delta_upper = 0.0;
  // Pathwise spread estimate at report_time (only when report_time > 0).
  bool has_pathwise = false;
  double pathwise_mean_gap = 0.0;
  double pathwise_stderr = 0.0;
  bool pathwise_ok = true;
};

struct MonotoneWitness {
  std::string what;
  double n_a = 0.0, n_b = 0.0;
  double value_a = 0.0, value_b = 0.0;
  double tolerance = 0.0;
};

struct MonotoneCheck {
  bool pass = false;
  std::vector<MonotoneWitness> witnesses;
};

struct UniquenessCertificate {
  std::vector<double> gap_sequence;
  double extrapolated_limit = 0.0;  // Aitken extrapolation, clamped to [0, last gap]
  bool pass = false;
};

struct SqueezeReport {
  std::vector<SqueezeRow> rows;
  MonotoneCheck monotone;
  UniquenessCertificate certificate;
  double m0_estimate = 0.0;       // a-priori sup bound the fields must respect
  double sup_abs_y = 0.0;         // realized sup over every field in the ladder
  bool m0_ok = false;
  bool middle_sandwich_checked = false;  // g itself solved and bracketed (Lipschitz g)
  bool middle_sandwich_ok = true;
  bool pass = false;
};

/// sup |Phi| on the grid + C*T*e^(C*T) + 1: standard linear-growth a-priori
/// sup bound used as the M0 estimate.
double a_priori_sup_bound(const TerminalCondition& phi, const GridConfig& grid, double combined_C);

SqueezeReport run_squeeze(const SqueezeConfig& config, const SolveOptions& options = {});

/// Ladder monotonicity within the per-pair numerical tolerance:
/// y_lower0 non-decreasing, y_upper0 non-increasing, lower <= upper per row.
MonotoneCheck check_monotone(const std::vector<SqueezeRow>& rows);

/// sup over rows of realized |y| stays below the a-priori estimate.
bool uniform_bound_check(const SqueezeReport& report);

UniquenessCertificate uniqueness_certificate(const std::vector<SqueezeRow>& rows);

}  // namespace bsdelab
