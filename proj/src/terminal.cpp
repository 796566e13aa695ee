#include "bsdelab/terminal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bsdelab {

TerminalCondition::TerminalCondition(TerminalKind kind, std::vector<double> coeffs, double c)
    : kind_(kind), coeffs_(std::move(coeffs)), c_(c) {}

TerminalCondition TerminalCondition::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument("terminal: polynomial needs at least one coefficient");
  }
  for (double a : coefficients) {
    if (!std::isfinite(a)) throw std::invalid_argument("terminal: coefficients must be finite");
  }
  return {TerminalKind::Polynomial, std::move(coefficients), 0.0};
}

TerminalCondition TerminalCondition::cosine() { return {TerminalKind::Cosine, {}, 0.0}; }

TerminalCondition TerminalCondition::quartic_arbitrage(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("terminal: offset must be finite");
  return {TerminalKind::QuarticArbitrage, {}, c};
}

TerminalCondition TerminalCondition::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("terminal: offset must be finite");
  return {TerminalKind::Constant, {}, c};
}

double TerminalCondition::operator()(double x) const {
  switch (kind_) {
    case TerminalKind::Polynomial: {
      double v = 0.0;  // Horner, highest degree first
      for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * x + coeffs_[k];
      return v;
    }
    case TerminalKind::Cosine:
      return std::cos(x);
    case TerminalKind::QuarticArbitrage: {
      const double x2 = x * x;
      return c_ - 0.25 * x2 * x2;
    }
    case TerminalKind::Constant:
      return c_;
  }
  throw std::logic_error("terminal: unknown kind");
}

}  // namespace bsdelab
