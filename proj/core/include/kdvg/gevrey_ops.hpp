#pragma once
#include "kdvg/spectral_field.hpp"

namespace kdvg {

// Largest sigma * xi_max for which weighted coefficients stay above the
// double-precision floor by a useful margin.
inline constexpr double kPrecisionBudget = 25.0;

double symbol_m(double sigma, double xi);
void check_precision_budget(double sigma, const Grid& grid, double budget = kPrecisionBudget);

SpectralField apply_I(double sigma, const SpectralField& field);
double gevrey_norm(double sigma, const SpectralField& field);

struct RadiusEstimate {
  double sigma_hat = 0.0;
  double fit_rms = 0.0;
  int k_lo = 0;
  int k_hi = 0;
  bool noise_floor_hit = false;
};

// noise_floor <= 0 selects 1e-12 * max|u_hat|.
RadiusEstimate estimate_radius(const SpectralField& field, double tail_fraction = 0.25,
                               double noise_floor = -1.0);

// u_lambda(x) = lambda^-2 u(x / lambda) on the grid of period lambda * L.
// Index k keeps its slot; xi_k shrinks by lambda. lambda must be an integer >= 1.
SpectralField rescale_field(const SpectralField& field, double lambda);

}  // namespace kdvg
