#pragma once
#include <complex>
#include <span>
#include <vector>

namespace kdvg {

using Cx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Grid {
  int n = 0;
  double length = 0.0;
  int dealias_cut = 0;

  double dxi() const { return kTwoPi / length; }
  double xi(int k) const { return dxi() * k; }
  double x(int j) const { return length * j / n; }
  int kmin() const { return -n / 2 + 1; }
  int kmax() const { return n / 2; }
  double xi_max() const { return xi(dealias_cut); }
  // storage slot of frequency index k in FFT order
  int slot(int k) const { return k >= 0 ? k : k + n; }
};

Grid make_grid(int n, double length);

// Coefficients stored in FFT order (slot k >= 0 -> k, k < 0 -> k + n).
// Convention: u_hat(k) = (1/n) sum_j u(x_j) exp(-2 pi i k j / n).
struct SpectralField {
  Grid grid;
  std::vector<Cx> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.n, Cx(0.0, 0.0)) {}

  Cx operator()(int k) const { return coeffs[grid.slot(k)]; }
  Cx& operator()(int k) { return coeffs[grid.slot(k)]; }
};

SpectralField forward_transform(std::span<const double> samples, const Grid& grid);
std::vector<double> inverse_transform(const SpectralField& field);
double l2_norm(const SpectralField& field);
SpectralField dealias(const SpectralField& field);

// Throws IntegrityError when |u(-k) - conj u(k)| exceeds rel_tol * max|u|,
// or the Nyquist coefficient carries an imaginary part.
void check_conjugate_symmetry(const SpectralField& field, double rel_tol = 1e-12);
double max_abs_coeff(const SpectralField& field);

}  // namespace kdvg
