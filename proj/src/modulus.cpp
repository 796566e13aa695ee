#include "bsdelab/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace bsdelab {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Modulus::Modulus(ModulusKind kind, double K, double alpha, double cap, double A)
    : kind_(kind), K_(K), alpha_(alpha), cap_(cap), growth_A_(A) {
  require(std::isfinite(K) && K > 0.0, "modulus: scale K must be positive");
  require(std::isfinite(A) && A > 0.0, "modulus: growth constant A must be positive");
  if (kind == ModulusKind::Holder) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
            "modulus: holder exponent must lie in (0, 1]");
  }
  if (kind == ModulusKind::CappedLinear) {
    require(std::isfinite(cap) && cap > 0.0, "modulus: cap must be positive");
  }
  // The declared growth constant must dominate the kind's true minimum, or
  // every envelope constant built from it would be silently wrong.
  require(growth_A_ >= analytic_minimal_growth() * (1.0 - 1e-12),
          "modulus: growth constant A below the minimal admissible value");
}

Modulus Modulus::holder(double K, double alpha, double growth_A) {
  return Modulus(ModulusKind::Holder, K, alpha, 0.0, growth_A);
}
Modulus Modulus::holder(double K, double alpha) { return holder(K, alpha, K); }

Modulus Modulus::linear(double K, double growth_A) {
  return Modulus(ModulusKind::Linear, K, 1.0, 0.0, growth_A);
}
Modulus Modulus::linear(double K) { return linear(K, K); }

Modulus Modulus::capped_linear(double K, double cap, double growth_A) {
  return Modulus(ModulusKind::CappedLinear, K, 1.0, cap, growth_A);
}
Modulus Modulus::capped_linear(double K, double cap) { return capped_linear(K, cap, K); }

double Modulus::operator()(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("modulus: argument must be >= 0");
  switch (kind_) {
    case ModulusKind::Holder:
      return K_ * std::pow(x, alpha_);
    case ModulusKind::Linear:
      return K_ * x;
    case ModulusKind::CappedLinear:
      return std::min(K_ * x, cap_);
  }
  return 0.0;  // unreachable
}

double Modulus::analytic_minimal_growth() const {
  switch (kind_) {
    case ModulusKind::Holder:
      if (alpha_ == 1.0) return K_;
      // sup K x^a/(x+1) at x* = a/(1-a):  K * a^a * (1-a)^(1-a)
      return K_ * std::pow(alpha_, alpha_) * std::pow(1.0 - alpha_, 1.0 - alpha_);
    case ModulusKind::Linear:
      return K_;  // supremum approached as x -> infinity
    case ModulusKind::CappedLinear:
      // maximum at the kink x = cap/K
      return K_ * cap_ / (cap_ + K_);
  }
  return 0.0;  // unreachable
}

ModulusCertification certify_modulus(const Modulus& m, int sample_count, std::uint64_t seed) {
  return certify_modulus_fn([&m](double x) { return m(x); }, m.growth_constant(), sample_count,
                            seed);
}

ModulusCertification certify_modulus_fn(const std::function<double(double)>& phi, double growth_A,
                                        int sample_count, std::uint64_t seed) {
  if (sample_count < 2) throw std::invalid_argument("certify_modulus: need at least 2 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);

  ModulusCertification cert;
  cert.zero_at_origin = phi(0.0) == 0.0;

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(sample_count) + 3);
  xs.push_back(0.0);
  xs.push_back(1e-9);
  xs.push_back(100.0);
  for (int i = 0; i < sample_count; ++i) xs.push_back(u(rng));
  std::sort(xs.begin(), xs.end());

  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = phi(xs[i]);

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double drop = vals[i] - vals[i + 1];
    if (drop > cert.worst_monotonicity) cert.worst_monotonicity = drop;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double excess = vals[i] - growth_A * (xs[i] + 1.0);
    if (excess > cert.worst_growth) {
      cert.worst_growth = excess;
      cert.growth_witness_x = xs[i];
    }
  }
  for (int i = 0; i < sample_count; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const double excess = phi(x + y) - phi(x) - phi(y);
    if (excess > cert.worst_subadditivity) {
      cert.worst_subadditivity = excess;
      cert.subadd_witness_x = x;
      cert.subadd_witness_y = y;
    }
  }

  cert.pass = cert.zero_at_origin && cert.worst_monotonicity <= kCertifyTolerance &&
              cert.worst_subadditivity <= kCertifyTolerance &&
              cert.worst_growth <= kCertifyTolerance;
  return cert;
}

double minimal_growth_constant(const Modulus& m, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("minimal_growth_constant: grid too small");

  // Interval guaranteed to contain the maximizer of eval(x)/(x+1).
  double x_max = 1000.0;
  if (m.kind() == ModulusKind::Holder && m.exponent() < 1.0) {
    x_max = std::max(x_max, 10.0 * m.exponent() / (1.0 - m.exponent()));
  } else if (m.kind() == ModulusKind::CappedLinear) {
    x_max = std::max(x_max, 4.0 * m.cap() / m.scale());
  }

  double best = 0.0;
  const double step = x_max / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) {
    const double x = i * step;
    best = std::max(best, m(x) / (x + 1.0));
  }
  // Tail beyond the grid: the ratio's limit as x -> infinity.
  double tail = 0.0;
  switch (m.kind()) {
    case ModulusKind::Holder:
      tail = (m.exponent() == 1.0) ? m.scale() : 0.0;
      break;
    case ModulusKind::Linear:
      tail = m.scale();
      break;
    case ModulusKind::CappedLinear:
      tail = 0.0;
      break;
  }
  return std::max(best, tail);
}

}  // namespace bsdelab
