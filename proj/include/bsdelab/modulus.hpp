#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace bsdelab {

enum class ModulusKind { Holder, Linear, CappedLinear };

/// Modulus of continuity: continuous, non-decreasing, subadditive, vanishing
/// at zero, and of linear growth eval(x) <= A*(x+1). Three closed-form kinds:
///   Holder        K * x^alpha, alpha in (0, 1]
///   Linear        K * x
///   CappedLinear  min(K * x, cap)
/// The growth constant A is supplied by the caller and must dominate the
/// kind's true minimal constant; construction checks that analytically.
class Modulus {
 public:
  static Modulus holder(double K, double alpha, double growth_A);
  static Modulus holder(double K, double alpha);  // growth_A = K
  static Modulus linear(double K, double growth_A);
  static Modulus linear(double K);                // growth_A = K
  static Modulus capped_linear(double K, double cap, double growth_A);
  static Modulus capped_linear(double K, double cap);  // growth_A = K

  /// Evaluate at x >= 0; throws std::domain_error for negative arguments.
  double operator()(double x) const;

  [[nodiscard]] ModulusKind kind() const { return kind_; }
  [[nodiscard]] double growth_constant() const { return growth_A_; }
  [[nodiscard]] double scale() const { return K_; }
  [[nodiscard]] double exponent() const { return alpha_; }  // Holder only
  [[nodiscard]] double cap() const { return cap_; }         // CappedLinear only

  /// Exact value of sup_x eval(x)/(x+1) for the stored kind.
  [[nodiscard]] double analytic_minimal_growth() const;

 private:
  Modulus(ModulusKind kind, double K, double alpha, double cap, double A);

  ModulusKind kind_;
  double K_ = 0.0;
  double alpha_ = 1.0;
  double cap_ = 0.0;
  double growth_A_ = 0.0;
};

/// Result of sampling-based certification of the modulus axioms.
struct ModulusCertification {
  bool pass = false;
  bool zero_at_origin = false;
  double worst_monotonicity = 0.0;  // max eval(x_i) - eval(x_{i+1}) over sorted samples
  double worst_subadditivity = 0.0; // max eval(x+y) - eval(x) - eval(y)
  double worst_growth = 0.0;        // max eval(x) - A*(x+1)
  double subadd_witness_x = 0.0;
  double subadd_witness_y = 0.0;
  double growth_witness_x = 0.0;
};

inline constexpr double kCertifyTolerance = 1e-12;

/// Check monotonicity, subadditivity and linear growth on deterministic
/// samples drawn from [0, 100]; violations above kCertifyTolerance fail.
ModulusCertification certify_modulus(const Modulus& m, int sample_count, std::uint64_t seed);

/// Same machinery for an arbitrary callable (used to certify tabulated
/// drivers and to demonstrate rejection of broken candidates such as x^2).
ModulusCertification certify_modulus_fn(const std::function<double(double)>& phi,
                                        double growth_A, int sample_count, std::uint64_t seed);

/// Estimate inf{A : eval(x) <= A*(x+1) on [0, inf)} by grid search over an
/// interval that provably contains the maximizer, combined with the analytic
/// tail limit of the stored kind.
double minimal_growth_constant(const Modulus& m, int grid_points = 200001);

}  // namespace bsdelab
