#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bsdelab/modulus.hpp"

namespace bsdelab {

enum class GeneratorKind { Zero, LinearInZ, AbsZ, PowerZ, SqrtY, Tabulated };

/// Driver g(t, z) of the backward equation, paired with the bounds it is
/// declared to satisfy: |g(t,z1) - g(t,z2)| <= modulus(|z1 - z2|) and
/// |g(t,z)| <= B*(|z| + 1). The declared bounds feed every constant in the
/// envelope construction, so they are certified by sampling rather than
/// trusted. SqrtY is the one y-dependent kind; it exists only for the
/// counterexample experiments and is rejected wherever a z-driver is needed.
class Generator {
 public:
  static Generator zero();    // convention: A = B = 1
  static Generator abs_z(int dim = 1);  // |z|, linear modulus K = 1, B = 1
  static Generator power_z(double K, double alpha, int dim = 1);  // K*|z|^alpha
  static Generator linear_in_z(std::vector<double> mu);           // mu . z
  static Generator sqrt_y();  // sqrt(|y|), counterexample-only
  static Generator tabulated(std::vector<double> z_knots, std::vector<double> values,
                             Modulus modulus, double growth_B);

  /// Replace the declared bounds (config-supplied A and B).
  [[nodiscard]] Generator with_bounds(Modulus modulus, double growth_B) const;

  double eval(double t, double y, std::span<const double> z) const;
  double eval1(double t, double z) const;  // dim-1 convenience, y = 0

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] GeneratorKind kind() const { return kind_; }
  [[nodiscard]] bool depends_on_y() const { return kind_ == GeneratorKind::SqrtY; }
  [[nodiscard]] bool time_dependent() const { return false; }  // all shipped kinds
  [[nodiscard]] const Modulus& modulus() const { return modulus_; }
  [[nodiscard]] double growth_bound() const { return growth_B_; }

  /// C = max(A, B): the single constant the envelope radius is built from.
  [[nodiscard]] double combined_constant() const;

  /// Exact Lipschitz constant when the kind has one (Zero, AbsZ, LinearInZ,
  /// Tabulated); nullopt for kinds that are only uniformly continuous.
  [[nodiscard]] std::optional<double> lipschitz_constant() const;

 private:
  Generator(GeneratorKind kind, Modulus modulus, double growth_B, int dim);

  GeneratorKind kind_;
  Modulus modulus_;
  double growth_B_;
  int dim_;
  double K_ = 1.0;
  double alpha_ = 1.0;
  std::vector<double> mu_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Radius of the ball that contains every admissible envelope minimizer:
/// 2C/(n - C). Throws std::invalid_argument when n <= C ("search_radius: n <= C").
double search_radius(double combined_C, double n);
double search_radius(const Generator& g, double n);

/// A-priori bound on the spread between the two envelope solutions:
/// 2 * modulus(2C/(n - C)) * T.
double envelope_gap_bound(const Generator& g, double n, double T);

struct GeneratorCertification {
  bool pass = false;
  double worst_growth = 0.0;      // max |g| - B*(|z|+1)
  double worst_continuity = 0.0;  // max |g(z1)-g(z2)| - modulus(|z1-z2|)
  std::vector<double> growth_witness;
  std::vector<double> continuity_witness_a;
  std::vector<double> continuity_witness_b;
};

/// Sample the declared growth/continuity bounds at random (t, z) pairs.
GeneratorCertification certify_generator(const Generator& g, int sample_count,
                                         std::uint64_t seed, double z_range = 10.0);

}  // namespace bsdelab
