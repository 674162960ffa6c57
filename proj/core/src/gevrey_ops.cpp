#include "kdvg/gevrey_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdvg/error.hpp"

namespace kdvg {

double symbol_m(double sigma, double xi) {
  if (sigma < 0.0) throw DomainError("symbol_m: sigma must be nonnegative");
  if (sigma * std::abs(xi) > 700.0)
    throw DomainError("symbol_m: sigma*|xi| = " + std::to_string(sigma * std::abs(xi)) +
                      " overflows double precision");
  return std::cosh(sigma * xi);
}

void check_precision_budget(double sigma, const Grid& grid, double budget) {
  const double s = sigma * grid.xi_max();
  if (s > budget)
    throw ConfigError("precision budget exceeded: sigma*xi_max = " + std::to_string(s) +
                      " > " + std::to_string(budget));
}

SpectralField apply_I(double sigma, const SpectralField& field) {
  check_precision_budget(sigma, field.grid);
  SpectralField out = field;
  const Grid& g = field.grid;
  for (int k = g.kmin(); k <= g.kmax(); ++k) out(k) *= symbol_m(sigma, g.xi(k));
  return out;
}

double gevrey_norm(double sigma, const SpectralField& field) {
  check_precision_budget(sigma, field.grid);
  const Grid& g = field.grid;
  double s = 0.0;
  for (int k = g.kmin(); k <= g.kmax(); ++k)
    s += std::exp(2.0 * sigma * std::abs(g.xi(k))) * std::norm(field(k));
  return std::sqrt(g.length * s);
}

namespace {

void fit(const SpectralField& f, int lo, int hi, RadiusEstimate& r) {
  const int m = hi - lo + 1;
  double sx = 0, sy = 0;
  for (int k = lo; k <= hi; ++k) {
    sx += f.grid.xi(k);
    sy += std::log(std::abs(f(k)));
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (int k = lo; k <= hi; ++k) {
    const double dx = f.grid.xi(k) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(std::abs(f(k))) - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (int k = lo; k <= hi; ++k) {
    const double e = std::log(std::abs(f(k))) - (my + slope * (f.grid.xi(k) - mx));
    rss += e * e;
  }
  r.sigma_hat = std::max(0.0, -slope);
  r.fit_rms = std::sqrt(rss / m);
  r.k_lo = lo;
  r.k_hi = hi;
}

}  // namespace

RadiusEstimate estimate_radius(const SpectralField& field, double tail_fraction,
                               double noise_floor) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 0.5))
    throw ConfigError("estimate_radius: tail_fraction must lie in (0, 1/2]");
  const double peak = max_abs_coeff(field);
  if (peak == 0.0) throw DomainError("estimate_radius: zero field");
  const double floor = noise_floor > 0.0 ? noise_floor : 1e-12 * peak;
  const int cut = field.grid.dealias_cut;
  auto usable = [&](int k) { return std::abs(field(k)) > floor; };
  auto window = [&](int top) {
    return std::max(1, static_cast<int>(std::lround(tail_fraction * top)));
  };

  RadiusEstimate r;
  const int lo = cut - window(cut) + 1;
  bool ok = cut - lo + 1 >= 8;
  for (int k = lo; ok && k <= cut; ++k) ok = usable(k);
  if (ok) {
    fit(field, lo, cut, r);
    return r;
  }

  // fall back to the contiguous usable band [1, k_top]
  int k_top = 0;
  while (k_top < cut && usable(k_top + 1)) ++k_top;
  if (k_top < 2) throw DomainError("estimate_radius: all modes below the noise floor");
  const int m = std::min(k_top, std::max(8, window(k_top)));
  r.noise_floor_hit = true;
  fit(field, k_top - m + 1, k_top, r);
  return r;
}

SpectralField rescale_field(const SpectralField& field, double lambda) {
  if (!(lambda >= 1.0) || std::abs(lambda - std::round(lambda)) > 1e-12)
    throw ConfigError("rescale_field: lambda must be an integer >= 1 (got " +
                      std::to_string(lambda) + ")");
  const Grid g = make_grid(field.grid.n, field.grid.length * std::round(lambda));
  SpectralField out(g);
  const double s = 1.0 / (lambda * lambda);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = s * field.coeffs[i];
  return out;
}

}  // namespace kdvg
