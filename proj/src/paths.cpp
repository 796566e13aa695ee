#include "bsdelab/paths.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bsdelab/parallel.hpp"

namespace bsdelab {

PathBundle::PathBundle(std::uint64_t seed, int num_paths, int num_steps, double T)
    : seed_(seed), num_paths_(num_paths), num_steps_(num_steps), T_(T) {
  if (num_paths_ < 1) throw std::invalid_argument("paths: num_paths must be at least 1");
  if (num_steps_ < 1) throw std::invalid_argument("paths: num_steps must be at least 1");
  if (!(T_ > 0.0) || !std::isfinite(T_)) {
    throw std::invalid_argument("paths: horizon must be positive and finite");
  }
}

PathBundle PathBundle::zero_noise(int num_paths, int num_steps, double T) {
  PathBundle b(0, num_paths, num_steps, T);
  b.zero_noise_ = true;
  return b;
}

void PathBundle::increments(int path, std::span<double> out) const {
  if (path < 0 || path >= num_paths_) throw std::out_of_range("paths: path index out of range");
  if (out.size() != static_cast<std::size_t>(num_steps_)) {
    throw std::invalid_argument("paths: output span has wrong size");
  }
  if (zero_noise_) {
    for (double& v : out) v = 0.0;
    return;
  }
  // Engine per path: generation is order- and thread-independent.
  std::seed_seq sseq{seed_, static_cast<std::uint64_t>(path), std::uint64_t{0x9e3779b97f4a7c15ULL}};
  std::mt19937_64 rng(sseq);
  std::normal_distribution<double> gauss(0.0, std::sqrt(dt()));
  for (double& v : out) v = gauss(rng);
}

std::vector<double> PathBundle::terminal_values(int threads) const {
  std::vector<double> w(static_cast<std::size_t>(num_paths_));
  const int tc = resolve_thread_count(threads);
  parallel_for(static_cast<std::size_t>(num_paths_), tc, [&](std::size_t b, std::size_t e) {
    std::vector<double> dw(static_cast<std::size_t>(num_steps_));
    for (std::size_t p = b; p < e; ++p) {
      increments(static_cast<int>(p), dw);
      double s = 0.0;
      for (double v : dw) s += v;  // fixed order within a path
      w[p] = s;
    }
  });
  return w;
}

PathBundle simulate_paths(std::uint64_t seed, int num_paths, int num_steps, double T) {
  return {seed, num_paths, num_steps, T};
}

PathStats path_bundle_stats(const PathBundle& bundle, int threads) {
  const std::vector<double> w = bundle.terminal_values(threads);
  PathStats st;
  double sum = 0.0;
  for (double v : w) sum += v;
  st.mean_terminal = sum / static_cast<double>(w.size());
  double ss = 0.0;
  for (double v : w) {
    const double d = v - st.mean_terminal;
    ss += d * d;
  }
  st.var_terminal = w.size() > 1 ? ss / static_cast<double>(w.size() - 1) : 0.0;
  // Terminal values are N(0, T); a sample mean beyond 4 standard errors flags
  // a broken stream rather than bad luck.
  const double se = 4.0 * std::sqrt(bundle.horizon() / static_cast<double>(w.size()));
  st.mean_within_tolerance = bundle.is_zero_noise() || std::fabs(st.mean_terminal) <= se;
  return st;
}

}  // namespace bsdelab
