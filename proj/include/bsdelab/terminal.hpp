#pragma once

#include <vector>

namespace bsdelab {

enum class TerminalKind { Polynomial, Cosine, QuarticArbitrage, Constant };

/// Terminal datum Phi: the backward equation's value at the horizon as a
/// function of the terminal state.
class TerminalCondition {
 public:
  /// coefficients[k] multiplies x^k.
  static TerminalCondition polynomial(std::vector<double> coefficients);
  static TerminalCondition cosine();                    // cos(x)
  static TerminalCondition quartic_arbitrage(double c); // c - x^4/4
  static TerminalCondition constant(double c);

  double operator()(double x) const;

  [[nodiscard]] TerminalKind kind() const { return kind_; }
  [[nodiscard]] double offset() const { return c_; }  // QuarticArbitrage/Constant

 private:
  TerminalCondition(TerminalKind kind, std::vector<double> coeffs, double c);

  TerminalKind kind_;
  std::vector<double> coeffs_;
  double c_ = 0.0;
};

}  // namespace bsdelab
