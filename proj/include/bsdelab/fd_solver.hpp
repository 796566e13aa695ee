#pragma once

#include <functional>

#include "bsdelab/envelope.hpp"
#include "bsdelab/generator.hpp"
#include "bsdelab/grid.hpp"
#include "bsdelab/solution_field.hpp"
#include "bsdelab/terminal.hpp"

namespace bsdelab {

struct SolveOptions {
  int threads = 0;   // 0 = hardware concurrency; 1 reproduces any run exactly
  bool cache = true; // memoize driver values on exact-z hits (bit-identical off/on)
};

/// Driver for the scheme: value of g at (t, z), plus whether values may vary
/// with t (controls cache retention across time levels) and whether a single
/// evaluation is expensive enough to justify splitting rows across threads.
struct FdDriver {
  std::function<double(double, double)> eval;
  bool time_dependent = false;
  bool expensive = false;
};

FdDriver make_driver(const Generator& g);  // rejects y-dependent kinds
FdDriver make_driver(const Envelope& e);

/// Explicit backward finite-difference sweep for
///   u(k,j) = u(k+1,j) + dt * [ 0.5*D2 u(k+1,j) + g(t_k, D1 u(k+1,j)) ]
/// from the terminal row u(Nt, j) = phi(x_j). Interior rows use central
/// differences; boundary rows use one-sided D1 and zero second derivative
/// (linear extrapolation). Validates the grid's stability contract before
/// touching data; throws std::runtime_error naming the time step if a
/// non-finite value appears during the sweep.
SolutionField solve_fd(const FdDriver& g, const TerminalCondition& phi,
                       const GridConfig& grid, const SolveOptions& options = {});
SolutionField solve_fd(const Generator& g, const TerminalCondition& phi,
                       const GridConfig& grid, const SolveOptions& options = {});
SolutionField solve_fd(const Envelope& g, const TerminalCondition& phi,
                       const GridConfig& grid, const SolveOptions& options = {});

/// Same sweep, same arithmetic, but only the initial value and the sup-norm
/// are retained (no dense field). Bitwise equal to solve_fd(...).y0().
struct SolveSummary {
  double y0 = 0.0;
  double max_abs_y = 0.0;
};
SolveSummary solve_fd_summary(const FdDriver& g, const TerminalCondition& phi,
                              const GridConfig& grid, const SolveOptions& options = {});

}  // namespace bsdelab
