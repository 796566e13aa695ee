#include "bsdelab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bsdelab {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

double euclid_norm(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Generator::Generator(GeneratorKind kind, Modulus modulus, double growth_B, int dim)
    : kind_(kind), modulus_(std::move(modulus)), growth_B_(growth_B), dim_(dim) {
  require(std::isfinite(growth_B) && growth_B > 0.0, "generator: growth bound B must be positive");
  require(dim == 1 || dim == 2, "generator: dim must be 1 or 2");
}

Generator Generator::zero() {
  return Generator(GeneratorKind::Zero, Modulus::linear(1.0, 1.0), 1.0, 1);
}

Generator Generator::abs_z(int dim) {
  return Generator(GeneratorKind::AbsZ, Modulus::linear(1.0, 1.0), 1.0, dim);
}

Generator Generator::power_z(double K, double alpha, int dim) {
  require(std::isfinite(K) && K > 0.0, "generator: power scale K must be positive");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
          "generator: power exponent must lie in (0, 1]");
  Generator g(GeneratorKind::PowerZ, Modulus::holder(K, alpha, K), K, dim);
  g.K_ = K;
  g.alpha_ = alpha;
  return g;
}

Generator Generator::linear_in_z(std::vector<double> mu) {
  require(!mu.empty() && mu.size() <= 2, "generator: mu must have 1 or 2 entries");
  double norm = 0.0;
  for (double v : mu) {
    require(std::isfinite(v), "generator: mu entries must be finite");
    norm += v * v;
  }
  norm = std::sqrt(norm);
  require(norm > 0.0, "generator: mu must be nonzero (use the zero kind instead)");
  Generator g(GeneratorKind::LinearInZ, Modulus::linear(norm, norm), norm,
              static_cast<int>(mu.size()));
  g.mu_ = std::move(mu);
  return g;
}

Generator Generator::sqrt_y() {
  // Bounds are placeholders: this kind never enters the envelope machinery.
  return Generator(GeneratorKind::SqrtY, Modulus::holder(1.0, 0.5, 1.0), 1.0, 1);
}

Generator Generator::tabulated(std::vector<double> z_knots, std::vector<double> values,
                               Modulus modulus, double growth_B) {
  require(z_knots.size() >= 2, "generator: tabulated needs at least 2 knots");
  require(z_knots.size() == values.size(), "generator: knot/value size mismatch");
  for (std::size_t i = 0; i + 1 < z_knots.size(); ++i) {
    require(z_knots[i] < z_knots[i + 1], "generator: knots must be strictly increasing");
  }
  for (double v : values) require(std::isfinite(v), "generator: table values must be finite");
  Generator g(GeneratorKind::Tabulated, std::move(modulus), growth_B, 1);
  g.knots_ = std::move(z_knots);
  g.values_ = std::move(values);
  return g;
}

Generator Generator::with_bounds(Modulus modulus, double growth_B) const {
  Generator g = *this;
  g.modulus_ = std::move(modulus);
  require(std::isfinite(growth_B) && growth_B > 0.0, "generator: growth bound B must be positive");
  g.growth_B_ = growth_B;
  return g;
}

double Generator::eval(double t, double y, std::span<const double> z) const {
  (void)t;  // every shipped kind is time-invariant
  if (static_cast<int>(z.size()) != dim_) {
    throw std::invalid_argument("generator: z has wrong dimension");
  }
  switch (kind_) {
    case GeneratorKind::Zero:
      return 0.0;
    case GeneratorKind::LinearInZ: {
      double s = 0.0;
      for (std::size_t i = 0; i < mu_.size(); ++i) s += mu_[i] * z[i];
      return s;
    }
    case GeneratorKind::AbsZ:
      return dim_ == 1 ? std::fabs(z[0]) : euclid_norm(z);
    case GeneratorKind::PowerZ: {
      const double r = dim_ == 1 ? std::fabs(z[0]) : euclid_norm(z);
      return K_ * std::pow(r, alpha_);
    }
    case GeneratorKind::SqrtY:
      return std::sqrt(std::fabs(y));
    case GeneratorKind::Tabulated: {
      const double x = z[0];
      if (x <= knots_.front()) return values_.front();
      if (x >= knots_.back()) return values_.back();
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
      const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
      const std::size_t lo = hi - 1;
      const double w = (x - knots_[lo]) / (knots_[hi] - knots_[lo]);
      return values_[lo] + w * (values_[hi] - values_[lo]);
    }
  }
  return 0.0;  // unreachable
}

double Generator::eval1(double t, double z) const { return eval(t, 0.0, std::span(&z, 1)); }

double Generator::combined_constant() const {
  return std::max(modulus_.growth_constant(), growth_B_);
}

std::optional<double> Generator::lipschitz_constant() const {
  switch (kind_) {
    case GeneratorKind::Zero:
      return 0.0;
    case GeneratorKind::AbsZ:
      return 1.0;
    case GeneratorKind::LinearInZ: {
      double s = 0.0;
      for (double v : mu_) s += v * v;
      return std::sqrt(s);
    }
    case GeneratorKind::Tabulated: {
      double worst = 0.0;
      for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        worst = std::max(worst, std::fabs(values_[i + 1] - values_[i]) /
                                    (knots_[i + 1] - knots_[i]));
      }
      return worst;
    }
    case GeneratorKind::PowerZ:
      if (alpha_ == 1.0) return K_;
      return std::nullopt;  // slope blows up at z = 0
    case GeneratorKind::SqrtY:
      return std::nullopt;
  }
  return std::nullopt;
}

double search_radius(double combined_C, double n) {
  if (!(std::isfinite(combined_C) && combined_C > 0.0)) {
    throw std::invalid_argument("search_radius: combined constant must be positive");
  }
  if (!(n > combined_C)) {
    throw std::invalid_argument("search_radius: n <= C (need n strictly above the combined "
                                "growth/continuity constant)");
  }
  return 2.0 * combined_C / (n - combined_C);
}

double search_radius(const Generator& g, double n) {
  return search_radius(g.combined_constant(), n);
}

double envelope_gap_bound(const Generator& g, double n, double T) {
  if (!(std::isfinite(T) && T >= 0.0)) {
    throw std::invalid_argument("envelope_gap_bound: horizon T must be >= 0");
  }
  return 2.0 * g.modulus()(search_radius(g, n)) * T;
}

GeneratorCertification certify_generator(const Generator& g, int sample_count, std::uint64_t seed,
                                         double z_range) {
  if (g.depends_on_y()) {
    throw std::invalid_argument("certify_generator: y-dependent drivers are outside the "
                                "(growth, continuity) contract");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uz(-z_range, z_range);
  std::uniform_real_distribution<double> ut(0.0, 1.0);

  GeneratorCertification cert;
  const int d = g.dim();
  std::vector<double> a(d), b(d);
  const double B = g.growth_bound();

  for (int s = 0; s < sample_count; ++s) {
    const double t = ut(rng);
    for (int i = 0; i < d; ++i) a[i] = uz(rng);
    for (int i = 0; i < d; ++i) b[i] = uz(rng);

    double norm_a = 0.0, dist = 0.0;
    for (int i = 0; i < d; ++i) {
      norm_a += a[i] * a[i];
      const double diff = a[i] - b[i];
      dist += diff * diff;
    }
    norm_a = std::sqrt(norm_a);
    dist = std::sqrt(dist);

    const double ga = g.eval(t, 0.0, a);
    const double gb = g.eval(t, 0.0, b);

    const double growth_excess = std::fabs(ga) - B * (norm_a + 1.0);
    if (growth_excess > cert.worst_growth) {
      cert.worst_growth = growth_excess;
      cert.growth_witness = a;
    }
    const double cont_excess = std::fabs(ga - gb) - g.modulus()(dist);
    if (cont_excess > cert.worst_continuity) {
      cert.worst_continuity = cont_excess;
      cert.continuity_witness_a = a;
      cert.continuity_witness_b = b;
    }
  }
  cert.pass = cert.worst_growth <= kCertifyTolerance && cert.worst_continuity <= kCertifyTolerance;
  return cert;
}

}  // namespace bsdelab
