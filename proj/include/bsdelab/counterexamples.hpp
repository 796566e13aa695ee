#pragma once

#include "bsdelab/fd_solver.hpp"
#include "bsdelab/grid.hpp"
#include "bsdelab/paths.hpp"
#include "bsdelab/residual.hpp"

namespace bsdelab {

/// Deterministic family indexed by c in [0, 1]:
///   y_c(t) = [max(0, (c - t)/2)]^2  with  z = 0  on [0, 1],
/// every member solving the same backward equation with driver sqrt(|y|) and
/// zero terminal value — one equation, a continuum of solutions.
double sqrt_family_value(double c, double t);

/// Max over the uniform grid {k/Nt} of |y_c(t_k) - sum_{j>=k} sqrt(y_c(t_j))/Nt|.
/// Left-endpoint quadrature of a piecewise-linear integrand: residual <= 2/Nt.
double verify_sqrt_family(double c, int num_time_steps);

/// Pathwise residual of the closed-form pair (y, z) = (c - W^4/4, -W^3) for
/// the driver (3/2)|z|^(2/3).
ResidualReport verify_quartic_solution(double c, const PathBundle& paths, int threads = 0);

struct StrictComparisonReport {
  double c = 0.0;
  double y0_numeric = 0.0;          // scheme's value at t=0 for terminal c - x^4/4
  double prob_strictly_below = 0.0; // MC estimate of P(terminal datum < c)
  ResidualReport residual_stats;
  double y0_wide = 0.0;             // same solve on a 25% wider domain
  double domain_sensitivity = 0.0;  // |y0_numeric - y0_wide|
  bool pass = false;
};

/// Demonstrates failure of strict comparison: the terminal datum is < c with
/// probability one, yet the time-0 value equals c. Passes iff
/// |y0_numeric - c| <= 0.02*max(1, |c|), the MC probability >= 0.99, and the
/// reported value moves < half that tolerance when the domain widens by 25%.
StrictComparisonReport strict_comparison_demo(double c, const GridConfig& grid,
                                              const PathBundle& paths,
                                              const SolveOptions& options = {});

}  // namespace bsdelab
