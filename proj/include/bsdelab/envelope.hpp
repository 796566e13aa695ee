#pragma once

#include <span>
#include <vector>

#include "bsdelab/generator.hpp"

namespace bsdelab {

enum class EnvelopeSide { Lower, Upper };

/// n-Lipschitz envelope of a uniformly continuous driver:
///   lower: inf_u { g(t,u) + n|z-u| }     upper: sup_u { g(t,u) - n|z-u| }
///
/// Candidates u are drawn from the absolute lattice h*Z^d intersected with the
/// closed ball B(z, r), r = 2C/(n-C) — outside that ball a candidate can never
/// beat u = z — plus the point u = z itself. Adjoining u = z makes
/// lower <= g <= upper hold exactly (bitwise) for the computed values, and the
/// absolute lattice (shared h, shrinking r) makes candidate sets nested across
/// increasing n, so computed envelopes are exactly monotone along a ladder
/// that shares one lattice step.
class Envelope {
 public:
  /// lattice_step <= 0 picks the default max(r/50, 1e-4).
  Envelope(Generator base, double n, EnvelopeSide side, double lattice_step = 0.0);

  double eval(double t, std::span<const double> z) const;
  double eval1(double t, double z) const;

  [[nodiscard]] const Generator& base() const { return base_; }
  [[nodiscard]] double n() const { return n_; }
  [[nodiscard]] EnvelopeSide side() const { return side_; }
  [[nodiscard]] double lattice_step() const { return h_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] bool time_dependent() const { return base_.time_dependent(); }

  static double default_lattice_step(double combined_C, double n);

 private:
  double eval_1d(double t, double z) const;
  double eval_2d(double t, std::span<const double> z) const;
  double base_lattice_value(double t, long long i) const;

  Generator base_;
  double n_;
  EnvelopeSide side_;
  double h_;
  double radius_;

  // Precomputed base values on the 1-d lattice around the origin; queries
  // outside fall back to direct evaluation of the identical expression.
  long long pre_lo_ = 1, pre_hi_ = 0;
  std::vector<double> pre_values_;
};

}  // namespace bsdelab
