#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bsdelab/grid.hpp"

namespace bsdelab {

/// Dense backward-scheme output: y(k, j) ~ value surface, z(k, j) ~ its
/// spatial gradient (central differences at the same time level, one-sided at
/// the domain edges). Row k = num_time_steps holds the terminal datum exactly.
class SolutionField {
 public:
  SolutionField(GridConfig grid);

  [[nodiscard]] const GridConfig& grid() const { return grid_; }
  [[nodiscard]] double y(int k, int j) const { return y_[idx(k, j)]; }
  [[nodiscard]] double z(int k, int j) const { return z_[idx(k, j)]; }
  double& y(int k, int j) { return y_[idx(k, j)]; }
  double& z(int k, int j) { return z_[idx(k, j)]; }

  /// Value at t = 0, x = 0 (the reported initial datum).
  [[nodiscard]] double y0() const;
  [[nodiscard]] double max_abs_y() const;

  /// Bilinear interpolation of (y, z) at interior (t, x); exact at nodes.
  /// Throws std::domain_error outside [0,T] x [-L,L].
  [[nodiscard]] std::pair<double, double> evaluate(double t, double x) const;

  /// CSV with header "t,x,y,z", row-major by time then space, 17 significant
  /// digits per value.
  void write_csv(std::ostream& out) const;

 private:
  [[nodiscard]] std::size_t idx(int k, int j) const;

  GridConfig grid_;
  std::vector<double> y_;
  std::vector<double> z_;
};

}  // namespace bsdelab
