#pragma once
#include <cstdint>
#include <vector>

#include "kdvg/spectral_field.hpp"

namespace kdvg {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double checkpoint_every = 0.1;
  double c_cfl = 0.5;
  bool nonlinear = true;  // test hook: false gives the exact linear flow
};

struct Checkpoint {
  double t;
  SpectralField u;
};

struct Trajectory {
  std::vector<Checkpoint> checkpoints;
  double l2_drift = 0.0;  // max relative |‖u(t)‖ - ‖u0‖| / ‖u0‖ over checkpoints
};

// -(i xi / 2) (u*u)^ on the dealiased band.
SpectralField rhs_nonlinear(const SpectralField& field);

// One integrating-factor RK4 step of u_t + u_xxx + u u_x = 0.
SpectralField step(const SpectralField& field, double dt, bool nonlinear = true);

// Advective time-step budget c_cfl / (xi_max * max|u|); +inf for zero data.
double max_stable_dt(const SpectralField& field, double c_cfl = 0.5);

Trajectory evolve(const SpectralField& u0, const SolverConfig& config);

// 12 k^2 sech^2(k(x - x0)), mean removed.
SpectralField soliton(double kappa, double x0, const Grid& grid);
// Exact speed of the mean-removed soliton: 4k^2 minus the removed mean.
double soliton_speed(double kappa, double x0, const Grid& grid);
// Samples of the exact mean-removed soliton at time t.
std::vector<double> soliton_profile(double kappa, double x0, double t, const Grid& grid);

SpectralField gevrey_random_data(double sigma0, double amplitude, std::uint64_t seed,
                                 const Grid& grid);

}  // namespace kdvg
