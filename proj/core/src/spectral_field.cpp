#include "kdvg/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "kdvg/error.hpp"

namespace kdvg {

Grid make_grid(int n, double length) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("grid size n=" + std::to_string(n) + " must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length))
    throw ConfigError("grid length must be positive and finite");
  Grid g;
  g.n = n;
  g.length = length;
  g.dealias_cut = n / 3;
  return g;
}

SpectralField forward_transform(std::span<const double> samples, const Grid& grid) {
  if (static_cast<int>(samples.size()) != grid.n)
    throw ConfigError("forward_transform: got " + std::to_string(samples.size()) +
                      " samples for n=" + std::to_string(grid.n));
  const int n = grid.n;
  std::vector<Cx> half(n / 2 + 1);
  detail::r2c(n, samples.data(), half.data());
  SpectralField f(grid);
  const double inv_n = 1.0 / n;
  for (int k = 1; k < n / 2; ++k) {
    f(k) = half[k] * inv_n;
    f(-k) = std::conj(f(k));
  }
  f(n / 2) = Cx(half[n / 2].real() * inv_n, 0.0);
  f(0) = 0.0;  // mean-zero gauge
  return f;
}

double max_abs_coeff(const SpectralField& field) {
  double m = 0.0;
  for (const Cx& c : field.coeffs) m = std::max(m, std::abs(c));
  return m;
}

void check_conjugate_symmetry(const SpectralField& field, double rel_tol) {
  const Grid& g = field.grid;
  const double scale = std::max(max_abs_coeff(field), 1e-300);
  for (int k = 1; k < g.n / 2; ++k) {
    if (std::abs(field(-k) - std::conj(field(k))) > rel_tol * scale)
      throw IntegrityError("conjugate symmetry violated at k=" + std::to_string(k));
  }
  if (std::abs(field(0).imag()) > rel_tol * scale ||
      std::abs(field(g.n / 2).imag()) > rel_tol * scale)
    throw IntegrityError("zero or Nyquist mode is not real");
}

std::vector<double> inverse_transform(const SpectralField& field) {
  check_conjugate_symmetry(field);
  const int n = field.grid.n;
  std::vector<Cx> half(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) half[k] = field(k);
  half[0] = Cx(half[0].real(), 0.0);
  half[n / 2] = Cx(half[n / 2].real(), 0.0);
  std::vector<double> out(n);
  detail::c2r(n, half.data(), out.data());
  return out;
}

double l2_norm(const SpectralField& field) {
  double s = 0.0;
  for (const Cx& c : field.coeffs) s += std::norm(c);
  return std::sqrt(field.grid.length * s);
}

SpectralField dealias(const SpectralField& field) {
  SpectralField out = field;
  const Grid& g = field.grid;
  for (int k = g.dealias_cut + 1; k <= g.kmax(); ++k) {
    out(k) = 0.0;
    if (k < g.n / 2) out(-k) = 0.0;
  }
  return out;
}

}  // namespace kdvg
