#include <doctest.h>

#include <cmath>
#include <random>

#include "kdvg/error.hpp"
#include "kdvg/series.hpp"

using namespace kdvg;

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

double omega1(int k, const double* x) {
  const int p = 2 * k;
  return ipow(x[0], p) + ipow(x[1], p) + ipow(x[2], p) + ipow(x[3], p) - ipow(x[0] + x[1], p) -
         ipow(x[0] + x[2], p) - ipow(x[0] + x[3], p);
}

double omega2(int k, const double* x) {
  const int p = 2 * k + 1;
  return ipow(x[0], p) + ipow(x[1], p) + ipow(x[2], p) + ipow(x[3], p);
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("complete homogeneous polynomials") {
  CHECK(h_poly(0, {2.0, 3.0}) == 1.0);
  CHECK(h_poly(-1, {2.0, 3.0}) == 0.0);
  CHECK(h_poly(2, {2.0, 3.0}) == 4.0 + 6.0 + 9.0);
  CHECK(h_poly(3, {1.0, 1.0, 1.0}) == 10.0);  // C(5, 2)
  CHECK(h_poly(4, {5.0}) == 625.0);
  CHECK(h_poly(2, {1.0, -1.0}) == 1.0);
}

TEST_CASE("cosh weights") {
  CHECK(CoshWeight::literal(0.7).value(1.3) == doctest::Approx(std::cosh(0.91)).epsilon(1e-15));
  const double c = std::cosh(0.4 * 2.5);
  CHECK(CoshWeight::energy(0.4).value(2.5) == doctest::Approx(c * c).epsilon(1e-15));
  CHECK(CoshWeight::energy(0.4).value(0.0) == 1.0);
}

TEST_CASE("Omega1 pieces reproduce the quotient") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> u(-9, 9);
  int checked = 0;
  while (checked < 200) {
    double x[4] = {double(u(rng)), double(u(rng)), double(u(rng)), 0.0};
    x[3] = -(x[0] + x[1] + x[2]);
    const double prod = x[0] * x[1] * x[2] * x[3];
    if (prod == 0.0) continue;
    const auto v = var_values(x[0], x[1], x[2], x[3]);
    for (int k = 2; k <= 7; ++k) {
      const double lhs = piece_sum(omega1_pieces(), v, 2 * k - 4) * prod;
      const double rhs = omega1(k, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
    ++checked;
  }
}

TEST_CASE("Omega1 at k = 2") {
  const auto v = var_values(1, 2, 3, -6);
  CHECK(piece_sum(omega1_pieces(), v, 0) == -12.0);
}

TEST_CASE("Omega2 pieces reproduce the quotient") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(-9, 9);
  int checked = 0;
  while (checked < 200) {
    double x[4] = {double(u(rng)), double(u(rng)), double(u(rng)), 0.0};
    x[3] = -(x[0] + x[1] + x[2]);
    const double prod = (x[0] + x[1]) * (x[0] + x[2]) * (x[0] + x[3]);
    if (prod == 0.0) continue;
    const auto v = var_values(x[0], x[1], x[2], x[3]);
    for (int k = 1; k <= 6; ++k) {
      const double lhs = piece_sum(omega2_pieces(), v, 2 * k - 2) * prod;
      const double rhs = omega2(k, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
    ++checked;
  }
  CHECK(piece_sum(omega2_pieces(), var_values(1, 2, 3, -6), 0) == 3.0);
}

TEST_CASE("beta4 pieces are Omega1 minus Omega2") {
  const auto v = var_values(1.5, -0.5, 2.0, -3.0);
  for (int j = 0; j <= 5; ++j) {
    const double a = piece_sum(omega1_pieces(), v, 2 * j);
    const double b = piece_sum(omega2_pieces(), v, 2 * j);
    CHECK(piece_sum(beta4_pieces(), v, 2 * j) == doctest::Approx(a - b).epsilon(1e-13));
  }
}

TEST_CASE("beta3 pieces") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-12, 12);
  for (int n = 0; n < 200; ++n) {
    const double a = u(rng), b = u(rng), c = -(a + b);
    const double prod = a * b * c;
    if (prod == 0.0) continue;
    const auto v = var_values3(a, b, c);
    for (int k = 1; k <= 6; ++k) {
      const int p = 2 * k + 1;
      const double rhs = ipow(a, p) + ipow(b, p) + ipow(c, p);
      CHECK(std::abs(piece_sum(beta3_pieces(), v, 2 * k - 2) * prod - rhs) <=
            1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
  // (1, -1, 0): per-degree value is 2k + 1
  const auto v = var_values3(1, -1, 0);
  for (int k = 1; k <= 5; ++k) CHECK(piece_sum(beta3_pieces(), v, 2 * k - 2) == 2.0 * k + 1);
}

TEST_CASE("series truncation") {
  // sum_k (2k+1)/(2k)! over k >= 1 = e - 1
  const auto v = var_values3(1, -1, 0);
  const auto r = series_sum(beta3_pieces(), v, 2, 1e-15);
  CHECK(static_cast<double>(r.value) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(r.terms > 5);
  CHECK(r.terms < 30);
  const auto big = var_values3(400, -300, -100);
  CHECK_THROWS_AS(series_sum(beta3_pieces(), big, 2, 1e-15, 10), DomainError);
}

}
