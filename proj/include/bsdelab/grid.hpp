#pragma once

namespace bsdelab {

/// Space-time grid for the explicit backward scheme on [0,T] x [-L, L].
///
/// The stability contract ties the time step to the mesh:
///   dt <= min(0.4*dx^2, dx/(2*lipschitz_cap))
/// The first term keeps the diffusion stencil's diagonal weight positive;
/// the second controls the gradient term when the driver's Lipschitz
/// constant is as large as lipschitz_cap (the envelope ladder's top n).
struct GridConfig {
  double T = 1.0;
  int num_time_steps = 0;     // Nt
  double domain_half_width = 6.0;  // L
  int num_space_points = 0;   // Nx, odd so that x = 0 is a node
  double lipschitz_cap = 1.0; // n_max the grid is rated for

  [[nodiscard]] double dx() const { return 2.0 * domain_half_width / (num_space_points - 1); }
  [[nodiscard]] double dt() const { return T / num_time_steps; }
  [[nodiscard]] double x(int j) const { return -domain_half_width + j * dx(); }
  [[nodiscard]] double t(int k) const { return k * dt(); }
  [[nodiscard]] int center_index() const { return (num_space_points - 1) / 2; }
  [[nodiscard]] double cfl_limit() const;

  /// Throws std::invalid_argument on any violated precondition; called by the
  /// solver before it touches any data.
  void validate() const;
};

/// Companion grid at half the spatial resolution with the time step re-chosen
/// to satisfy the stability contract; used for grid-refinement error proxies.
GridConfig half_resolution(const GridConfig& grid);

/// Smallest time-step count satisfying the contract for (T, dx, cap),
/// with ~2% slack so fixtures don't sit on the knife edge.
int min_time_steps(double T, double dx, double lipschitz_cap);

}  // namespace bsdelab
