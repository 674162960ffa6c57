#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kdvg/series.hpp"
#include "kdvg/spectral_field.hpp"

namespace kdvg {

// Arity-k multiplier. eval receives k frequencies with sum zero.
struct Multiplier {
  int arity = 0;
  std::function<Cx(const double* xi)> eval;
  bool symmetric = false;
  std::string label = "custom";
};

Multiplier symmetrize(const Multiplier& mult);

// L * sum_{k1+..+kk=0, |ki|<=cut} mult(xi) prod u_hat(ki), direct nested loops.
// Bit-identical for any worker count.
Cx lambda_k(const Multiplier& mult, const SpectralField& field, int k);

inline constexpr double kSeriesTol = 1e-12;
// Closed form of the M4 identity constant with alpha_4 real; infer_constant_c reproduces it.
inline const Cx kIdentityC{0.0, -1.0};

// M3 = -i [m(x1) m(x2+x3) (x2+x3)]_sym = (i/3) sum xj m^2(xj) on the hyperplane.
Cx m3(double sigma, const double* xi);
Cx m3_symmetrized(double sigma, const double* xi);  // 6-permutation oracle

// beta3 = -M3/alpha3, alpha3 = 3i x1x2x3, from the singularity-free series.
Cx beta3(double sigma, const double* xi, double tol = kSeriesTol);
Cx beta3(const CoshWeight& w, const double* xi, double tol = kSeriesTol);
Cx beta3_quotient(double sigma, const double* xi);

// M4 = -(3i/2) [beta3(x1,x2,x3+x4)(x3+x4)]_sym over S4.
Cx m4_definition(double sigma, const double* xi, double tol = kSeriesTol);
Cx m4_definition(const CoshWeight& w, const double* xi, double tol = kSeriesTol);

// Right side of the M4 identity with alpha4 = 3(x1+x2)(x1+x3)(x1+x4) and constant c.
Cx m4_identity(double sigma, const double* xi, Cx c);

struct QuadSample {
  double xi[4];
};
// Solves m4_definition = m4_identity(c) per (sigma, tuple); mean of the samples.
// Throws IntegrityError when the relative spread exceeds max_spread.
struct ConstantFit {
  Cx c;
  double spread;
  int samples;
};
ConstantFit infer_constant_c(const std::vector<double>& sigmas,
                             const std::vector<QuadSample>& tuples, double max_spread = 1e-8);

// beta4 = -M4/alpha4, alpha4 = i sum x^3, via the decomposed series.
Cx beta4_series(double sigma, const double* xi, double tol = kSeriesTol);
Cx beta4_series(const CoshWeight& w, const double* xi, double tol = kSeriesTol);
Cx beta4_quotient(double sigma, const double* xi);

// M5 = -2i [beta4(x1,x2,x3,x4+x5)(x4+x5)]_sym over S5.
Cx m5(double sigma, const double* xi, double tol = kSeriesTol);
Cx m5(const CoshWeight& w, const double* xi, double tol = kSeriesTol);

Multiplier energy_weight_multiplier(double sigma);  // m(x1) m(x2)
Multiplier m3_multiplier(double sigma);
Multiplier beta3_multiplier(double sigma);
Multiplier m4_multiplier(double sigma);
Multiplier beta4_multiplier(double sigma);

// Lambda_5(M5) with beta4 memoized on the integer lattice.
Cx lambda5_m5(const SpectralField& field, double sigma);

struct EnergyReport {
  double t = 0.0;
  double sigma = 0.0;
  double e2 = 0.0, e3 = 0.0, e4 = 0.0;
  double lambda3_beta3 = 0.0, lambda4_beta4 = 0.0;
  double imag_residual = 0.0;
};

enum class Lambda4Path { automatic, direct, fast };
EnergyReport energy_report(double sigma, const SpectralField& field, double t,
                           Lambda4Path path = Lambda4Path::automatic);

// Lambda_4(beta4) through separable expansion of the series terms and pair convolutions.
Cx lambda4_fast(const SpectralField& field, double sigma, double tol = kSeriesTol);
Cx lambda4_fast(const SpectralField& field, const CoshWeight& w, double tol = kSeriesTol);

}  // namespace kdvg
