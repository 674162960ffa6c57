#pragma once
#include <array>
#include <cstdint>
#include <vector>

namespace kdvg {

// Even weight W(xi) = constant + scale * sum_{k>=1} (sigma_eff xi)^{2k} / (2k)!.
// literal(s): W = cosh(s xi), the Taylor series the bounds of the analysis are stated for.
// energy(s):  W = m^2 = cosh^2(s xi) = 1/2 + cosh(2 s xi)/2, the weight of E_I^2.
struct CoshWeight {
  double sigma = 0.0;
  double constant = 1.0;
  double scale = 1.0;
  double sigma_eff = 0.0;

  static CoshWeight literal(double s) { return {s, 1.0, 1.0, s}; }
  static CoshWeight energy(double s) { return {s, 1.0, 0.5, 2.0 * s}; }

  double value(double xi) const;
};

// Variables of a 4-tuple on the hyperplane: singles and pair sums.
enum class Var : std::uint8_t { x1, x2, x3, x4, s12, s13, s14, s23, s24, s34 };
inline constexpr int kNumVars = 10;
using VarValues = std::array<double, kNumVars>;

VarValues var_values(double x1, double x2, double x3, double x4);
VarValues var_values3(double x1, double x2, double x3);

struct Arg {
  std::int8_t sign;
  Var var;
};

// At total degree D this piece contributes coef * prod(pre) * h_{D - |pre|}(args),
// h_n the complete homogeneous symmetric polynomial (h_n = 0 for n < 0).
struct Piece {
  int coef;
  std::vector<Arg> pre;
  std::vector<Arg> args;
};

// Omega1(K)/(x1 x2 x3 x4), degree 2K-4 (sign-corrected decomposition).
const std::vector<Piece>& omega1_pieces();
// Omega2(K)/((x1+x2)(x1+x3)(x1+x4)), degree 2K-2.
const std::vector<Piece>& omega2_pieces();
// Omega1(j+2)/prod - Omega2(j+1)/prod, degree 2j.
const std::vector<Piece>& beta4_pieces();
// (x1^{2k+1}+x2^{2k+1}+x3^{2k+1})/(x1 x2 x3), degree 2k-2.
const std::vector<Piece>& beta3_pieces();

double h_poly(int n, const std::vector<double>& args);
double piece_sum(const std::vector<Piece>& pieces, const VarValues& v, int degree);

struct SeriesResult {
  long double value;
  int terms;
};

// sum_{j>=0} P_{2j}(v) / (2j + q)!, P_D the piece sum at degree D. Truncates when
// the factorial tail majorant drops below tol * |partial sum|; throws DomainError
// if that has not happened after kmax terms.
SeriesResult series_sum(const std::vector<Piece>& pieces, const VarValues& v, int q,
                        double tol, int kmax = 200);

}  // namespace kdvg
