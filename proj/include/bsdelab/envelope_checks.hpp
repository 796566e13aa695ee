#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsdelab/envelope.hpp"

namespace bsdelab {

/// 1-d sample grid z_min, z_min+step, ..., up to z_max.
struct ZGridSpec {
  double z_min = -3.0;
  double z_max = 3.0;
  double step = 0.05;

  [[nodiscard]] std::vector<double> points() const;
};

struct EnvelopeCheckViolation {
  std::string check;  // which property failed
  double n = 0.0;
  double z1 = 0.0, z2 = 0.0;
  double lhs = 0.0, rhs = 0.0;  // violated inequality lhs <= rhs
};

struct EnvelopeLadderRow {
  double n = 0.0;
  double lattice_step = 0.0;
  double radius = 0.0;
  double max_gap = 0.0;            // max over grid of upper - lower
  double pointwise_gap_bound = 0.0;  // 2 * modulus(2C/(n-C))
};

struct MovingPointRow {
  double n = 0.0;
  double z = 0.0;       // probe point 1 + 1/n
  double value = 0.0;   // lower envelope at the probe
  double target = 0.0;  // g at the limit point 1
  double gap = 0.0;
};

struct EnvelopeVerification {
  bool pass = false;
  std::vector<EnvelopeLadderRow> rows;
  std::vector<EnvelopeCheckViolation> violations;
  std::vector<MovingPointRow> moving_point;
};

/// Property suite for an envelope ladder over a shared z grid:
///   (sandwich)  -C(|z|+1) <= lower <= g <= upper <= C(|z|+1), exactly;
///   (monotone)  lower non-decreasing / upper non-increasing in n, exactly
///               (one lattice step shared by the whole ladder, see Envelope);
///   (lipschitz) |env(z1) - env(z2)| <= n|z1-z2| + 2nh on grid pairs and
///               seeded random pairs — 2nh is the lattice slack;
///   (moving point) lower_n(1 + 1/n) -> g(1), reported as a table.
///
/// n_list must be strictly increasing and > C.
EnvelopeVerification verify_envelope_properties(const Generator& g,
                                                const std::vector<double>& n_list,
                                                const ZGridSpec& grid, std::uint64_t seed);

}  // namespace bsdelab
