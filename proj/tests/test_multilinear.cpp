#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kdvg/error.hpp"
#include "kdvg/gevrey_ops.hpp"
#include "kdvg/kdv_solver.hpp"
#include "kdvg/multilinear.hpp"
#include "kdvg/parallel.hpp"

using namespace kdvg;

namespace {

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<QuadSample> nondegenerate_quads(int count, std::uint64_t seed, int range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-range, range);
  std::vector<QuadSample> out;
  while (static_cast<int>(out.size()) < count) {
    QuadSample q{{double(u(rng)), double(u(rng)), double(u(rng)), 0.0}};
    q.xi[3] = -(q.xi[0] + q.xi[1] + q.xi[2]);
    bool ok = true;
    for (int i = 0; i < 4; ++i) ok = ok && q.xi[i] != 0.0;
    for (int j = 1; j < 4; ++j) ok = ok && q.xi[0] + q.xi[j] != 0.0;
    if (ok) out.push_back(q);
  }
  return out;
}

SpectralField cosine(int n) {
  SpectralField f(make_grid(n, kTwoPi));
  f(1) = f(-1) = 0.5;
  return f;
}

}  // namespace

TEST_SUITE("multilinear") {

TEST_CASE("symmetrize") {
  const Multiplier first{2, [](const double* x) { return Cx(x[0]); }, false, "x1"};
  const auto s2 = symmetrize(first);
  const double a[2] = {1.7, -1.7};
  CHECK(std::abs(s2.eval(a)) < 1e-15);

  const Multiplier sq{3, [](const double* x) { return Cx(x[0] * x[0]); }, false, "x1^2"};
  const double b[3] = {1.0, 2.0, -3.0};
  CHECK(symmetrize(sq).eval(b).real() == doctest::Approx(14.0 / 3.0).epsilon(1e-15));

  // idempotent
  const auto twice = symmetrize(Multiplier{3, symmetrize(sq).eval, false, "again"});
  CHECK(twice.eval(b).real() == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(symmetrize(Multiplier{6, sq.eval, false, "bad"}), DomainError);
}

TEST_CASE("lambda_k") {
  const auto u = gevrey_random_data(0.6, 1.0, 17, make_grid(32, kTwoPi));
  for (double s : {0.0, 0.3, 1.0}) {
    const double n = l2_norm(apply_I(s, u));
    CHECK(lambda_k(energy_weight_multiplier(s), u, 2).real() == doctest::Approx(n * n).epsilon(1e-10));
  }
  const Multiplier one{3, [](const double*) { return Cx(1.0); }, true, "1"};
  CHECK(std::abs(lambda_k(one, cosine(16), 3)) == 0.0);
  CHECK(std::abs(lambda_k(m4_multiplier(0.5), SpectralField(make_grid(16, kTwoPi)), 4)) == 0.0);
  CHECK_THROWS_AS(lambda_k(one, cosine(16), 4), DomainError);
}

TEST_CASE("lambda_k is independent of the worker count") {
  const auto u = gevrey_random_data(0.5, 1.0, 3, make_grid(32, kTwoPi));
  const int saved = num_threads();
  set_num_threads(1);
  const Cx a3 = lambda_k(beta3_multiplier(0.3), u, 3);
  const Cx a4 = lambda_k(m4_multiplier(0.3), u, 4);
  set_num_threads(4);
  const Cx b3 = lambda_k(beta3_multiplier(0.3), u, 3);
  const Cx b4 = lambda_k(m4_multiplier(0.3), u, 4);
  set_num_threads(saved);
  CHECK(a3 == b3);
  CHECK(a4 == b4);
}

TEST_CASE("M3") {
  const double z[3] = {1.0, -1.0, 0.0};
  CHECK(std::abs(m3(0.8, z)) == 0.0);
  const double t[3] = {0.7, 1.9, -2.6};
  CHECK(std::abs(m3(0.0, t)) < 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double x[3] = {u(rng), u(rng), 0.0};
    const double y[3] = {x[0], x[1], -(x[0] + x[1])};
    CHECK(rel(m3(0.4, y), m3_symmetrized(0.4, y)) <= 1e-13);
  }
  const double off[3] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(m3(0.4, off), DomainError);
}

TEST_CASE("beta3") {
  const double z[3] = {1.0, -1.0, 0.0};
  // literal weight at sigma = 1: coefficients (2k+1)/(2k)! sum to e - 1
  CHECK(beta3(CoshWeight::literal(1.0), z).real() ==
        doctest::Approx(-(std::exp(1.0) - 1.0) / 9.0).epsilon(1e-14));
  CHECK(std::abs(beta3(0.0, z)) == 0.0);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(-30, 30);
  int n = 0;
  while (n < 200) {
    const double x[3] = {double(u(rng)), double(u(rng)), 0.0};
    const double y[3] = {x[0], x[1], -(x[0] + x[1])};
    if (y[0] * y[1] * y[2] == 0.0) continue;
    for (double s : {0.05, 0.2, 0.5})
      CHECK(rel(beta3(s, y), beta3_quotient(s, y)) <= 1e-10);
    ++n;
  }
}

TEST_CASE("M4") {
  const double x[4] = {1.5, -0.5, 2.0, -3.0};
  CHECK(std::abs(m4_definition(0.0, x)) == 0.0);
  const Cx ref = m4_definition(0.4, x);
  std::array<int, 4> p{0, 1, 2, 3};
  while (std::next_permutation(p.begin(), p.end())) {
    const double y[4] = {x[p[0]], x[p[1]], x[p[2]], x[p[3]]};
    CHECK(rel(m4_definition(0.4, y), ref) <= 1e-13);
  }
  const double q[4] = {1, 2, 3, -6};
  CHECK(std::abs(m4_identity(0.0, q, kIdentityC)) < 1e-12);
  // M4 carries the -3i/2 prefactor with real beta3, so M4 / i is the real quantity
  const Cx mi = m4_identity(0.5, q, kIdentityC);
  CHECK(std::abs(mi.real()) <= 1e-13 * std::abs(mi));
  CHECK(rel(m4_identity(0.5, q, kIdentityC), m4_definition(0.5, q)) <= 1e-8);
  const double zero[4] = {1, -1, 0, 0};
  CHECK_THROWS_AS(m4_identity(0.5, zero, kIdentityC), DomainError);
}

TEST_CASE("constant of the M4 identity") {
  const auto quads = nondegenerate_quads(100, 11, 12);
  const auto fit = infer_constant_c({0.1, 0.5, 1.0}, quads);
  CHECK(fit.samples == 300);
  CHECK(fit.spread <= 1e-8);
  CHECK(std::abs(fit.c - kIdentityC) <= 1e-10);
  const auto a = infer_constant_c({0.3}, quads), b = infer_constant_c({0.7}, quads);
  CHECK(std::abs(a.c - b.c) <= 1e-10);

  auto bad = quads;
  bad.push_back({{1.0, -1.0, 2.0, -2.0}});
  CHECK_THROWS_AS(infer_constant_c({0.5}, bad), DomainError);
}

TEST_CASE("beta4 series") {
  const double x[4] = {3, -7, 9, -5};
  CHECK(std::abs(beta4_series(0.0, x)) == 0.0);
  for (const auto& q : nondegenerate_quads(150, 12, 20))
    for (double s : {0.05, 0.2, 0.5})
      CHECK(rel(beta4_series(s, q.xi), beta4_quotient(s, q.xi)) <= 1e-9);

  // alpha4 = 0 on (1, -1, 2, -2); compare with the symmetric perturbation limit of the quotient
  const double d[4] = {1, -1, 2, -2};
  const Cx v = beta4_series(0.5, d);
  CHECK(std::isfinite(v.real()));
  const double e = 1e-3;
  const double p[4] = {1 + e, -1, 2, -2 - e}, m[4] = {1 - e, -1, 2, -2 + e};
  const Cx lim = 0.5 * (beta4_quotient(0.5, p) + beta4_quotient(0.5, m));
  CHECK(rel(v, lim) <= 1e-5);
  CHECK_THROWS_AS(beta4_quotient(0.5, d), DomainError);
}

TEST_CASE("M5") {
  const double x[5] = {1, 4, -2, 3, -6};
  CHECK(std::abs(m5(0.0, x)) == 0.0);
  const Cx ref = m5(0.3, x);
  std::mt19937_64 rng(4);
  std::array<int, 5> p{0, 1, 2, 3, 4};
  for (int i = 0; i < 10; ++i) {
    std::shuffle(p.begin(), p.end(), rng);
    const double y[5] = {x[p[0]], x[p[1]], x[p[2]], x[p[3]], x[p[4]]};
    CHECK(rel(m5(0.3, y), ref) <= 1e-12);
  }
  std::uniform_int_distribution<int> u(-40, 40);
  for (int i = 0; i < 50; ++i) {
    double y[5];
    double s = 0, abs_sum = 0, mx = 0;
    for (int j = 0; j < 4; ++j) s += (y[j] = u(rng));
    y[4] = -s;
    for (double v : y) {
      abs_sum += std::abs(v);
      mx = std::max(mx, std::abs(v));
    }
    for (double sg : {0.01, 0.1, 0.5}) {
      const double bound = 86.0 / 27.0 * std::pow(sg, 4) * std::exp(sg * abs_sum) * mx;
      CHECK(std::abs(m5(CoshWeight::literal(sg), y)) <= bound);
    }
  }
}

TEST_CASE("energy report") {
  const auto u = gevrey_random_data(0.7, 0.5, 21, make_grid(32, kTwoPi));
  const auto r0 = energy_report(0.0, u, 0.0);
  const double n0 = l2_norm(u);
  CHECK(r0.e2 == doctest::Approx(n0 * n0).epsilon(1e-12));
  CHECK(r0.e3 == r0.e2);
  CHECK(r0.e4 == r0.e2);

  const auto rc = energy_report(0.3, cosine(32), 0.0);
  CHECK(rc.e2 == doctest::Approx(M_PI * std::cosh(0.3) * std::cosh(0.3)).epsilon(1e-13));

  // small data: corrections scale like the cube of the weighted norm
  SpectralField w = u;
  const double eps = 0.05, s = 0.2;
  const double scale = eps / l2_norm(apply_I(s, u));
  for (auto& c : w.coeffs) c *= scale;
  const auto r = energy_report(s, w, 0.0);
  CHECK(r.e2 == doctest::Approx(eps * eps).epsilon(1e-10));
  const double C = std::abs(r.e4 - r.e2) / (std::pow(eps, 3) + std::pow(eps, 4));
  MESSAGE("comparability constant " << C);
  CHECK(C <= 1.0);
  CHECK(r.imag_residual <= 1e-8 * std::max(r.e2, 1.0));
}

TEST_CASE("lambda4_fast matches the direct sum") {
  SpectralField zero(make_grid(32, kTwoPi));
  CHECK(std::abs(lambda4_fast(zero, 0.4)) == 0.0);
  const auto u = gevrey_random_data(0.6, 1.0, 31, make_grid(32, kTwoPi));
  CHECK(std::abs(lambda4_fast(u, 0.0)) == 0.0);
  for (double s : {0.1, 0.3}) {
    const Cx fast = lambda4_fast(u, s);
    const Cx direct = lambda_k(beta4_multiplier(s), u, 4);
    CHECK(rel(fast, direct) <= 1e-9);
  }
  const auto v = gevrey_random_data(1.0, 1.0, 2, make_grid(32, 2 * kTwoPi));
  CHECK(rel(lambda4_fast(v, 0.2), lambda_k(beta4_multiplier(0.2), v, 4)) <= 1e-9);
}

}
