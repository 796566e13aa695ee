#pragma once

#include <functional>

#include "bsdelab/generator.hpp"
#include "bsdelab/paths.hpp"

namespace bsdelab {

/// Candidate solution given in Markov form: a value as a function of (t, W_t).
using PathFn = std::function<double(double t, double w)>;

struct ResidualReport {
  double mean_sup = 0.0;  // average over paths of sup_k |defect_k|
  double max_sup = 0.0;
  int num_paths = 0;
  double dt = 0.0;
};

/// Pathwise backward-identity check for a candidate pair (y, z): on each path
/// the defect at step k is
///   y(t_k) - [ xi + sum_{j>=k} g(t_j, y_j, z_j) dt - sum_{j>=k} z_j dW_j ]
/// and the report aggregates sup_k |defect| over paths. Exact solutions
/// produce residuals that shrink with dt; a wrong candidate's residual
/// stalls at a positive level.
ResidualReport residual_check(const PathFn& y_of, const PathFn& z_of, const Generator& g,
                              const std::function<double(double)>& xi_of,
                              const PathBundle& paths, int threads = 0);

}  // namespace bsdelab
