#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bsdelab {

/// Deterministic bundle of Brownian increments: path p's increments come from
/// an engine seeded by (seed, p), so any subset of paths can be generated in
/// any order (or on any number of threads) with identical results. Increments
/// have variance T / num_steps.
class PathBundle {
 public:
  PathBundle(std::uint64_t seed, int num_paths, int num_steps, double T);

  /// Degenerate bundle with all-zero increments (residual identities collapse
  /// to exact equalities on it).
  static PathBundle zero_noise(int num_paths, int num_steps, double T);

  void increments(int path, std::span<double> out) const;  // size num_steps
  [[nodiscard]] std::vector<double> terminal_values(int threads = 0) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] int num_paths() const { return num_paths_; }
  [[nodiscard]] int num_steps() const { return num_steps_; }
  [[nodiscard]] double horizon() const { return T_; }
  [[nodiscard]] double dt() const { return T_ / num_steps_; }
  [[nodiscard]] bool is_zero_noise() const { return zero_noise_; }

 private:
  std::uint64_t seed_;
  int num_paths_;
  int num_steps_;
  double T_;
  bool zero_noise_ = false;
};

PathBundle simulate_paths(std::uint64_t seed, int num_paths, int num_steps, double T);

struct PathStats {
  double mean_terminal = 0.0;
  double var_terminal = 0.0;
  bool mean_within_tolerance = false;  // |mean| <= 4*sqrt(T/M)
};
PathStats path_bundle_stats(const PathBundle& bundle, int threads = 0);

}  // namespace bsdelab
