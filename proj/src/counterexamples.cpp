#include "bsdelab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsdelab {

double sqrt_family_value(double c, double t) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("sqrt family: c must lie in [0, 1]");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("sqrt family: t must lie in [0, 1]");
  }
  const double s = std::max(0.0, 0.5 * (c - t));
  return s * s;
}

double verify_sqrt_family(double c, int num_time_steps) {
  if (num_time_steps < 1) {
    throw std::invalid_argument("sqrt family: num_time_steps must be at least 1");
  }
  const double dt = 1.0 / num_time_steps;
  // With zero noise the backward identity is deterministic:
  //   y(t_k) = sum_{j >= k} sqrt(y(t_j)) * dt   (terminal value 0),
  // and sqrt(y(t)) = max(0, (c - t)/2) by construction.
  double acc = 0.0;
  double worst = std::fabs(sqrt_family_value(c, 1.0));
  for (int k = num_time_steps - 1; k >= 0; --k) {
    const double t = dt * k;
    acc += std::sqrt(sqrt_family_value(c, t)) * dt;
    worst = std::max(worst, std::fabs(sqrt_family_value(c, t) - acc));
  }
  return worst;
}

ResidualReport verify_quartic_solution(double c, const PathBundle& paths, int threads) {
  if (!std::isfinite(c)) throw std::invalid_argument("quartic pair: c must be finite");
  const Generator g = Generator::power_z(1.5, 2.0 / 3.0);
  const PathFn y_of = [c](double, double w) {
    const double w2 = w * w;
    return c - 0.25 * w2 * w2;
  };
  const PathFn z_of = [](double, double w) { return -w * w * w; };
  const std::function<double(double)> xi_of = [c](double w) {
    const double w2 = w * w;
    return c - 0.25 * w2 * w2;
  };
  return residual_check(y_of, z_of, g, xi_of, paths, threads);
}

StrictComparisonReport strict_comparison_demo(double c, const GridConfig& grid,
                                              const PathBundle& paths,
                                              const SolveOptions& options) {
  if (!std::isfinite(c)) throw std::invalid_argument("strict comparison: c must be finite");
  if ((grid.num_space_points - 1) % 8 != 0) {
    throw std::invalid_argument(
        "strict comparison: num_space_points - 1 must be divisible by 8 so the "
        "widened domain reuses the same mesh width");
  }

  const Generator g = Generator::power_z(1.5, 2.0 / 3.0);
  const TerminalCondition phi = TerminalCondition::quartic_arbitrage(c);

  StrictComparisonReport rep;
  rep.c = c;
  rep.y0_numeric = solve_fd_summary(make_driver(g), phi, grid, options).y0;

  // Same mesh width, domain wider by a quarter on each measure of L: boundary
  // effects on the reported value must be below half the acceptance tolerance.
  GridConfig wide = grid;
  wide.domain_half_width = grid.domain_half_width * 1.25;
  wide.num_space_points = grid.num_space_points + (grid.num_space_points - 1) / 4;
  rep.y0_wide = solve_fd_summary(make_driver(g), phi, wide, options).y0;
  rep.domain_sensitivity = std::fabs(rep.y0_numeric - rep.y0_wide);

  const std::vector<double> w_terminal = paths.terminal_values(options.threads);
  std::size_t below = 0;
  for (double w : w_terminal) {
    const double w2 = w * w;
    if (c - 0.25 * w2 * w2 < c) ++below;
  }
  rep.prob_strictly_below = static_cast<double>(below) / static_cast<double>(w_terminal.size());

  rep.residual_stats = verify_quartic_solution(c, paths, options.threads);

  const double tol = 0.02 * std::max(1.0, std::fabs(c));
  rep.pass = std::fabs(rep.y0_numeric - c) <= tol && rep.prob_strictly_below >= 0.99 &&
             rep.domain_sensitivity < 0.5 * tol;
  return rep;
}

}  // namespace bsdelab
