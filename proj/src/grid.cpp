#include "bsdelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsdelab {

double GridConfig::cfl_limit() const {
  const double d = dx();
  return std::min(0.4 * d * d, d / (2.0 * lipschitz_cap));
}

void GridConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("grid: horizon T must be positive and finite");
  }
  if (num_time_steps < 1) {
    throw std::invalid_argument("grid: num_time_steps must be at least 1");
  }
  if (!(domain_half_width > 0.0) || !std::isfinite(domain_half_width)) {
    throw std::invalid_argument("grid: domain_half_width must be positive and finite");
  }
  if (num_space_points < 3 || num_space_points % 2 == 0) {
    throw std::invalid_argument("grid: num_space_points must be odd and at least 3");
  }
  if (!(lipschitz_cap > 0.0) || !std::isfinite(lipschitz_cap)) {
    throw std::invalid_argument("grid: lipschitz_cap must be positive and finite");
  }
  // Tiny relative guard so a time step sized exactly at the limit is not
  // rejected for the rounding in T/Nt.
  const double limit = cfl_limit();
  if (dt() > limit * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "grid: time step " + std::to_string(dt()) + " violates the stability limit " +
        std::to_string(limit) + " = min(0.4*dx^2, dx/(2*lipschitz_cap)); increase "
        "num_time_steps or lower lipschitz_cap");
  }
}

GridConfig half_resolution(const GridConfig& grid) {
  if ((grid.num_space_points - 1) % 4 != 0) {
    throw std::invalid_argument(
        "grid: half resolution needs num_space_points - 1 divisible by 4");
  }
  GridConfig coarse = grid;
  coarse.num_space_points = (grid.num_space_points - 1) / 2 + 1;
  coarse.num_time_steps = min_time_steps(grid.T, coarse.dx(), grid.lipschitz_cap);
  return coarse;
}

int min_time_steps(double T, double dx, double lipschitz_cap) {
  if (!(T > 0.0) || !(dx > 0.0) || !(lipschitz_cap > 0.0)) {
    throw std::invalid_argument("min_time_steps: T, dx, lipschitz_cap must be positive");
  }
  const double limit = std::min(0.4 * dx * dx, dx / (2.0 * lipschitz_cap));
  const double steps = std::ceil(1.02 * T / limit);
  if (!(steps >= 1.0) || steps > 2e9) {
    throw std::invalid_argument("min_time_steps: required step count out of range");
  }
  return static_cast<int>(steps);
}

}  // namespace bsdelab
