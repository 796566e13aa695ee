#include "bsdelab/fd_solver.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bsdelab/parallel.hpp"

namespace bsdelab {

namespace {

// Memoization is value-transparent: keys are the exact bit patterns of z,
// so a hit returns precisely what a fresh evaluation would. Bounded so long
// sweeps cannot grow without limit.
constexpr std::size_t kMaxCacheEntries = std::size_t{1} << 20;

// Rows narrower than this are cheaper to fill serially than to fan out.
constexpr int kParallelRowThreshold = 4096;

// Values beyond this are treated as blow-up even while still finite, so the
// row's gradient can never overflow before the check fires.
constexpr double kBlowupLimit = 1e12;

void spatial_gradient(const std::vector<double>& u, double dx, std::vector<double>& z) {
  const int nx = static_cast<int>(u.size());
  z[0] = (u[1] - u[0]) / dx;
  for (int j = 1; j + 1 < nx; ++j) z[static_cast<std::size_t>(j)] = (u[j + 1] - u[j - 1]) / (2.0 * dx);
  z[static_cast<std::size_t>(nx - 1)] = (u[nx - 1] - u[nx - 2]) / dx;
}

class DriverValues {
 public:
  DriverValues(const FdDriver& driver, const SolveOptions& options, int nx, int threads)
      : driver_(driver),
        use_cache_(options.cache),
        row_parallel_(threads > 1 && driver.expensive && nx >= kParallelRowThreshold),
        threads_(threads) {
    values_.resize(static_cast<std::size_t>(nx));
    slot_.resize(static_cast<std::size_t>(nx));
  }

  /// Fill values()[j] = driver(t, z[j]). Identical bits whether the cache or
  /// row parallelism is on: evaluation is a pure function of (t, z) bits, the
  /// cache only decides who computes each value.
  void fill(double t, const std::vector<double>& z) {
    const std::size_t nx = z.size();
    if (!use_cache_) {
      if (row_parallel_) {
        parallel_for(nx, threads_, [&](std::size_t b, std::size_t e) {
          for (std::size_t j = b; j < e; ++j) values_[j] = driver_.eval(t, z[j]);
        });
      } else {
        for (std::size_t j = 0; j < nx; ++j) values_[j] = driver_.eval(t, z[j]);
      }
      return;
    }

    if (driver_.time_dependent) cache_.clear();  // keys are z-only

    // Phase 1 (serial): resolve hits, dedupe misses in first-touch order.
    miss_key_.clear();
    miss_z_.clear();
    pending_.clear();
    for (std::size_t j = 0; j < nx; ++j) {
      const std::uint64_t key = std::bit_cast<std::uint64_t>(z[j]);
      if (auto it = cache_.find(key); it != cache_.end()) {
        values_[j] = it->second;
        slot_[j] = -1;
      } else {
        auto [pit, inserted] = pending_.try_emplace(key, miss_z_.size());
        if (inserted) {
          miss_key_.push_back(key);
          miss_z_.push_back(z[j]);
        }
        slot_[j] = static_cast<std::ptrdiff_t>(pit->second);
      }
    }

    // Phase 2: evaluate unique misses (parallel when worthwhile).
    miss_val_.resize(miss_z_.size());
    if (row_parallel_ && miss_z_.size() >= static_cast<std::size_t>(kParallelRowThreshold)) {
      parallel_for(miss_z_.size(), threads_, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) miss_val_[i] = driver_.eval(t, miss_z_[i]);
      });
    } else {
      for (std::size_t i = 0; i < miss_z_.size(); ++i) miss_val_[i] = driver_.eval(t, miss_z_[i]);
    }

    // Phase 3 (serial): publish to the cache, then assemble the row.
    if (cache_.size() + miss_key_.size() > kMaxCacheEntries) cache_.clear();
    if (miss_key_.size() <= kMaxCacheEntries) {
      for (std::size_t i = 0; i < miss_key_.size(); ++i) cache_.emplace(miss_key_[i], miss_val_[i]);
    }
    for (std::size_t j = 0; j < nx; ++j) {
      if (slot_[j] >= 0) values_[j] = miss_val_[static_cast<std::size_t>(slot_[j])];
    }
  }

  [[nodiscard]] const std::vector<double>& values() const { return values_; }

 private:
  const FdDriver& driver_;
  bool use_cache_;
  bool row_parallel_;
  int threads_;
  std::vector<double> values_;
  std::vector<std::ptrdiff_t> slot_;
  std::unordered_map<std::uint64_t, double> cache_;
  std::unordered_map<std::uint64_t, std::size_t> pending_;
  std::vector<std::uint64_t> miss_key_;
  std::vector<double> miss_z_, miss_val_;
};

/// Core sweep shared by the dense and summary entry points; `sink(k, y, z)`
/// receives every time level from Nt down to 0 with its same-level gradient.
template <typename Sink>
void backward_sweep(const FdDriver& driver, const TerminalCondition& phi,
                    const GridConfig& grid, const SolveOptions& options, Sink&& sink) {
  if (!driver.eval) throw std::invalid_argument("solver: driver has no evaluation function");
  grid.validate();
  const int nx = grid.num_space_points;
  const int nt = grid.num_time_steps;
  const double dx = grid.dx();
  const double dt = grid.dt();
  const double dx2 = dx * dx;
  const int threads = resolve_thread_count(options.threads);

  std::vector<double> next(static_cast<std::size_t>(nx));
  std::vector<double> cur(static_cast<std::size_t>(nx));
  std::vector<double> zrow(static_cast<std::size_t>(nx));
  for (int j = 0; j < nx; ++j) next[static_cast<std::size_t>(j)] = phi(grid.x(j));
  for (double v : next) {
    if (!std::isfinite(v) || std::fabs(v) > kBlowupLimit) {
      throw std::runtime_error("solver: terminal datum exceeds 1e12 on the grid");
    }
  }
  spatial_gradient(next, dx, zrow);
  sink(nt, next, zrow);

  DriverValues gvals(driver, options, nx, threads);
  for (int k = nt - 1; k >= 0; --k) {
    const double tk = grid.t(k);
    gvals.fill(tk, zrow);  // zrow holds the gradient of level k+1
    const std::vector<double>& gv = gvals.values();

    cur[0] = next[0] + dt * gv[0];
    for (int j = 1; j + 1 < nx; ++j) {
      const std::size_t s = static_cast<std::size_t>(j);
      const double d2 = (next[s + 1] - 2.0 * next[s] + next[s - 1]) / dx2;
      cur[s] = next[s] + dt * (0.5 * d2 + gv[s]);
    }
    cur[static_cast<std::size_t>(nx - 1)] =
        next[static_cast<std::size_t>(nx - 1)] + dt * gv[static_cast<std::size_t>(nx - 1)];

    for (double v : cur) {
      if (!std::isfinite(v) || std::fabs(v) > kBlowupLimit) {
        throw std::runtime_error("solver: backward sweep blew up at time step " +
                                 std::to_string(k) +
                                 "; the grid violates stability for this driver");
      }
    }
    spatial_gradient(cur, dx, zrow);
    sink(k, cur, zrow);
    std::swap(cur, next);
  }
}

}  // namespace

FdDriver make_driver(const Generator& g) {
  if (g.depends_on_y()) {
    throw std::invalid_argument("solver: driver must be a function of (t, z) only");
  }
  if (g.dim() != 1) throw std::invalid_argument("solver: 1-d drivers only");
  FdDriver d;
  d.time_dependent = g.time_dependent();
  d.expensive = false;
  d.eval = [p = std::make_shared<Generator>(g)](double t, double z) { return p->eval1(t, z); };
  return d;
}

FdDriver make_driver(const Envelope& e) {
  if (e.base().dim() != 1) throw std::invalid_argument("solver: 1-d drivers only");
  FdDriver d;
  d.time_dependent = e.time_dependent();
  d.expensive = true;
  d.eval = [p = std::make_shared<Envelope>(e)](double t, double z) { return p->eval1(t, z); };
  return d;
}

SolutionField solve_fd(const FdDriver& g, const TerminalCondition& phi, const GridConfig& grid,
                       const SolveOptions& options) {
  SolutionField field(grid);
  backward_sweep(g, phi, grid, options,
                 [&](int k, const std::vector<double>& y, const std::vector<double>& z) {
                   for (int j = 0; j < grid.num_space_points; ++j) {
                     field.y(k, j) = y[static_cast<std::size_t>(j)];
                     field.z(k, j) = z[static_cast<std::size_t>(j)];
                   }
                 });
  return field;
}

SolutionField solve_fd(const Generator& g, const TerminalCondition& phi, const GridConfig& grid,
                       const SolveOptions& options) {
  return solve_fd(make_driver(g), phi, grid, options);
}

SolutionField solve_fd(const Envelope& g, const TerminalCondition& phi, const GridConfig& grid,
                       const SolveOptions& options) {
  return solve_fd(make_driver(g), phi, grid, options);
}

SolveSummary solve_fd_summary(const FdDriver& g, const TerminalCondition& phi,
                              const GridConfig& grid, const SolveOptions& options) {
  SolveSummary s;
  const std::size_t center = static_cast<std::size_t>(grid.center_index());
  backward_sweep(g, phi, grid, options,
                 [&](int k, const std::vector<double>& y, const std::vector<double>&) {
                   for (double v : y) s.max_abs_y = std::max(s.max_abs_y, std::fabs(v));
                   if (k == 0) s.y0 = y[center];
                 });
  return s;
}

}  // namespace bsdelab
