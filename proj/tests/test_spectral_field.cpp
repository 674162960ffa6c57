#include <doctest.h>

#include <cmath>
#include <random>

#include "kdvg/error.hpp"
#include "kdvg/spectral_field.hpp"

using namespace kdvg;

namespace {
std::vector<double> samples_of(const Grid& g, double (*f)(double, double)) {
  std::vector<double> u(g.n);
  for (int j = 0; j < g.n; ++j) u[j] = f(g.x(j), g.length);
  return u;
}
}  // namespace

TEST_SUITE("spectral_field") {

TEST_CASE("grid lattice") {
  const Grid g = make_grid(8, kTwoPi);
  CHECK(g.kmin() == -3);
  CHECK(g.kmax() == 4);
  CHECK(g.xi(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.dealias_cut == 2);
  CHECK(g.xi(-2) == -g.xi(2));

  CHECK(make_grid(256, 64.0).xi(1) == doctest::Approx(0.09817477042468103).epsilon(1e-15));
  CHECK(make_grid(256, 64.0).dealias_cut == 85);
  CHECK_THROWS_AS(make_grid(12, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(16, 0.0), ConfigError);
  CHECK_THROWS_AS(make_grid(16, -2.0), ConfigError);
}

TEST_CASE("single harmonic and mean removal") {
  const Grid g = make_grid(16, 3.0);
  const auto f = forward_transform(samples_of(g, [](double x, double L) { return std::cos(kTwoPi * x / L); }), g);
  CHECK(std::abs(f(1) - Cx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(f(-1) - Cx(0.5, 0.0)) < 1e-15);
  for (int k = g.kmin(); k <= g.kmax(); ++k)
    if (std::abs(k) != 1) CHECK(std::abs(f(k)) < 1e-15);

  const auto c = forward_transform(std::vector<double>(16, 3.0), g);
  CHECK(max_abs_coeff(c) == 0.0);

  CHECK_THROWS(forward_transform(std::vector<double>(15, 0.0), g));
}

TEST_CASE("roundtrip and Parseval") {
  const Grid g = make_grid(128, 10.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> u(g.n);
  double mean = 0.0;
  for (double& v : u) mean += (v = nd(rng)) / g.n;
  const auto f = forward_transform(u, g);
  check_conjugate_symmetry(f);
  const auto back = inverse_transform(f);
  double err = 0.0, scale = 0.0, quad = 0.0;
  for (int j = 0; j < g.n; ++j) {
    err = std::max(err, std::abs(back[j] - (u[j] - mean)));
    scale = std::max(scale, std::abs(u[j]));
    quad += (u[j] - mean) * (u[j] - mean) * g.length / g.n;
  }
  CHECK(err <= 1e-12 * scale);
  CHECK(l2_norm(f) * l2_norm(f) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("inverse transform") {
  const Grid g = make_grid(8, kTwoPi);
  SpectralField f(g);
  f(1) = f(-1) = 0.5;
  const auto u = inverse_transform(f);
  for (int j = 0; j < g.n; ++j) CHECK(u[j] == doctest::Approx(std::cos(g.x(j))).epsilon(1e-15));

  for (double v : inverse_transform(SpectralField(g))) CHECK(v == 0.0);

  f(-1) = Cx(0.5, 0.3);
  CHECK_THROWS_AS(inverse_transform(f), IntegrityError);
}

TEST_CASE("l2 norm") {
  const Grid g = make_grid(16, kTwoPi);
  SpectralField f(g);
  f(1) = f(-1) = 0.5;
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(l2_norm(SpectralField(g)) == 0.0);
  SpectralField h(g);
  h(2) = h(-2) = 1.0;
  CHECK(l2_norm(h) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-15));
}

TEST_CASE("dealias") {
  const Grid g = make_grid(16, kTwoPi);  // cut 5
  SpectralField f(g);
  f(3) = Cx(1.0, 2.0);
  f(-3) = std::conj(f(3));
  const auto same = dealias(f);
  CHECK(same.coeffs == f.coeffs);

  f(8) = 4.0;
  f(6) = Cx(0.0, 1.0);
  f(-6) = Cx(0.0, -1.0);
  const auto d = dealias(f);
  CHECK(d(8) == Cx(0.0));
  CHECK(d(6) == Cx(0.0));
  CHECK(d(-6) == Cx(0.0));
  CHECK(d(3) == f(3));
  CHECK(dealias(d).coeffs == d.coeffs);
}

}
