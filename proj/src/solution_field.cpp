#include "bsdelab/solution_field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bsdelab/io_util.hpp"

namespace bsdelab {

SolutionField::SolutionField(GridConfig grid) : grid_(grid) {
  grid_.validate();
  const std::size_t rows = static_cast<std::size_t>(grid_.num_time_steps) + 1;
  const std::size_t cols = static_cast<std::size_t>(grid_.num_space_points);
  y_.assign(rows * cols, 0.0);
  z_.assign(rows * cols, 0.0);
}

std::size_t SolutionField::idx(int k, int j) const {
  if (k < 0 || k > grid_.num_time_steps || j < 0 || j >= grid_.num_space_points) {
    throw std::out_of_range("solution field: index outside the grid");
  }
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(grid_.num_space_points) +
         static_cast<std::size_t>(j);
}

double SolutionField::y0() const { return y(0, grid_.center_index()); }

double SolutionField::max_abs_y() const {
  double m = 0.0;
  for (double v : y_) m = std::max(m, std::fabs(v));
  return m;
}

std::pair<double, double> SolutionField::evaluate(double t, double x) const {
  const double L = grid_.domain_half_width;
  if (!(t >= 0.0 && t <= grid_.T && x >= -L && x <= L)) {
    throw std::domain_error("solution field: (t, x) outside [0,T] x [-L,L]");
  }
  const double dt = grid_.dt();
  const double dx = grid_.dx();
  int k = static_cast<int>(std::floor(t / dt));
  int j = static_cast<int>(std::floor((x + L) / dx));
  k = std::clamp(k, 0, grid_.num_time_steps - 1);
  j = std::clamp(j, 0, grid_.num_space_points - 2);
  double a = t / dt - k;        // in [0, 1]
  double b = (x + L) / dx - j;  // in [0, 1]
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, 0.0, 1.0);
  // Exact node hits bypass the blend so no rounding is introduced there.
  if (a == 0.0 && b == 0.0) return {y(k, j), z(k, j)};
  auto blend = [&](const std::vector<double>& v) {
    const double v00 = v[idx(k, j)], v01 = v[idx(k, j + 1)];
    const double v10 = v[idx(k + 1, j)], v11 = v[idx(k + 1, j + 1)];
    return (1.0 - a) * ((1.0 - b) * v00 + b * v01) + a * ((1.0 - b) * v10 + b * v11);
  };
  return {blend(y_), blend(z_)};
}

void SolutionField::write_csv(std::ostream& out) const {
  out << "t,x,y,z\n";
  for (int k = 0; k <= grid_.num_time_steps; ++k) {
    for (int j = 0; j < grid_.num_space_points; ++j) {
      out << format_double17(grid_.t(k)) << ',' << format_double17(grid_.x(j)) << ','
          << format_double17(y(k, j)) << ',' << format_double17(z(k, j)) << '\n';
    }
  }
}

}  // namespace bsdelab
