#include "bsdelab/envelope.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bsdelab {

namespace {

// Default lattice step: 1/50th of the search radius, floored so envelopes of
// very steep ladders stay affordable. Callers that need a finer resolution
// (closed-form comparisons, shared-ladder exactness) pass an explicit step.
constexpr double kDefaultStepFraction = 1.0 / 50.0;
constexpr double kStepFloor = 1e-4;

// Cap on the precomputed lattice table (8 bytes each).
constexpr long long kMaxPrecomputeEntries = 4'000'000;
constexpr double kPrecomputeHalfWidth = 8.0;

}  // namespace

double Envelope::default_lattice_step(double combined_C, double n) {
  const double r = search_radius(combined_C, n);
  return std::max(r * kDefaultStepFraction, kStepFloor);
}

Envelope::Envelope(Generator base, double n, EnvelopeSide side, double lattice_step)
    : base_(std::move(base)), n_(n), side_(side) {
  if (base_.depends_on_y()) {
    throw std::invalid_argument("envelope: base driver must depend on z only");
  }
  radius_ = search_radius(base_, n);  // throws when n <= C
  // lattice_step == 0 selects the default step; anything else must be a
  // positive finite width.
  if (lattice_step != 0.0 && !(std::isfinite(lattice_step) && lattice_step > 0.0)) {
    throw std::invalid_argument("envelope: lattice step must be positive");
  }
  h_ = lattice_step > 0.0 ? lattice_step
                          : default_lattice_step(base_.combined_constant(), n);
  if (!(std::isfinite(h_) && h_ > 0.0)) {
    throw std::invalid_argument("envelope: lattice step must be positive");
  }

  // 1-d fast path: tabulate the base on the lattice once. Values are produced
  // by the exact expression the fallback uses, so hitting or missing the
  // table can never change an output bit.
  if (base_.dim() == 1 && !base_.time_dependent()) {
    const double half_width = kPrecomputeHalfWidth + radius_;
    const long long hi = static_cast<long long>(std::floor(half_width / h_));
    if (2 * hi + 1 <= kMaxPrecomputeEntries) {
      pre_lo_ = -hi;
      pre_hi_ = hi;
      pre_values_.resize(static_cast<std::size_t>(2 * hi + 1));
      for (long long i = pre_lo_; i <= pre_hi_; ++i) {
        pre_values_[static_cast<std::size_t>(i - pre_lo_)] = base_lattice_value(0.0, i);
      }
    }
  }
}

double Envelope::base_lattice_value(double t, long long i) const {
  const double u = static_cast<double>(i) * h_;
  return base_.eval1(t, u);
}

double Envelope::eval_1d(double t, double z) const {
  if (!std::isfinite(z)) throw std::domain_error("envelope: z must be finite");
  const double r = radius_;
  const bool lower = side_ == EnvelopeSide::Lower;
  // Conservative index window; admission is the exact test |z - u| <= r.
  const long long i_min = static_cast<long long>(std::floor((z - r) / h_)) - 1;
  const long long i_max = static_cast<long long>(std::ceil((z + r) / h_)) + 1;
  const bool have_table = !pre_values_.empty();

  double best = lower ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  for (long long i = i_min; i <= i_max; ++i) {
    const double u = static_cast<double>(i) * h_;
    const double d = std::fabs(z - u);
    if (d > r) continue;
    const double fv = (have_table && i >= pre_lo_ && i <= pre_hi_)
                          ? pre_values_[static_cast<std::size_t>(i - pre_lo_)]
                          : base_lattice_value(t, i);
    const double v = lower ? fv + n_ * d : fv - n_ * d;
    if (lower ? v < best : v > best) best = v;
  }
  // Adjoin u = z: pins computed lower <= g(z) <= computed upper exactly.
  const double fz = base_.eval1(t, z);
  if (lower ? fz < best : fz > best) best = fz;
  return best;
}

double Envelope::eval_2d(double t, std::span<const double> z) const {
  const double r = radius_;
  const bool lower = side_ == EnvelopeSide::Lower;
  const long long i_min = static_cast<long long>(std::floor((z[0] - r) / h_)) - 1;
  const long long i_max = static_cast<long long>(std::ceil((z[0] + r) / h_)) + 1;
  const long long j_min = static_cast<long long>(std::floor((z[1] - r) / h_)) - 1;
  const long long j_max = static_cast<long long>(std::ceil((z[1] + r) / h_)) + 1;

  double best = lower ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  double u[2];
  for (long long i = i_min; i <= i_max; ++i) {
    u[0] = static_cast<double>(i) * h_;
    const double dx = z[0] - u[0];
    for (long long j = j_min; j <= j_max; ++j) {
      u[1] = static_cast<double>(j) * h_;
      const double dy = z[1] - u[1];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d > r) continue;
      const double fv = base_.eval(t, 0.0, std::span<const double>(u, 2));
      const double v = lower ? fv + n_ * d : fv - n_ * d;
      if (lower ? v < best : v > best) best = v;
    }
  }
  const double fz = base_.eval(t, 0.0, z);
  if (lower ? fz < best : fz > best) best = fz;
  return best;
}

double Envelope::eval(double t, std::span<const double> z) const {
  if (static_cast<int>(z.size()) != base_.dim()) {
    throw std::invalid_argument("envelope: z has wrong dimension");
  }
  return base_.dim() == 1 ? eval_1d(t, z[0]) : eval_2d(t, z);
}

double Envelope::eval1(double t, double z) const {
  if (base_.dim() != 1) throw std::invalid_argument("envelope: eval1 needs a 1-d base");
  return eval_1d(t, z);
}

}  // namespace bsdelab
