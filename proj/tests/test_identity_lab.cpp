#include <doctest.h>

#include <cmath>

#include "kdvg/identity_lab.hpp"
#include "kdvg/multilinear.hpp"

using namespace kdvg::lab;

namespace {
RationalTuple tup(std::vector<Q> free) { return RationalTuple(std::move(free)); }
}  // namespace

TEST_SUITE("identity_lab") {

TEST_CASE("rational tuples") {
  const auto t = tup({1, 2, 3});
  REQUIRE(t.size() == 4);
  CHECK(t[3] == -6);
  CHECK_FALSE(t.has_zero());
  CHECK(tup({1, -1, 2}).has_zero_pair());
  CHECK(tup({0, 1, 2}).has_zero());
  CHECK_THROWS(RationalTuple::from_full({1, 2, 3}));
  CHECK(RationalTuple::from_full({Q(1, 2), Q(-1, 3), Q(-1, 6)}).size() == 3);
}

TEST_CASE("Omega1") {
  CHECK(omega1_direct(2, tup({1, 1, 1})) == 36);
  CHECK(omega1_direct(2, tup({1, 2, 3})) == 432);
  CHECK(omega1_decomposed(2, tup({1, 2, 3})) == 432);
  CHECK(omega1_decomposed(3, tup({1, 2, 3})) == omega1_direct(3, tup({1, 2, 3})));
  const auto z = tup({0, Q(3, 7), -2});
  for (int k = 2; k <= 6; ++k) CHECK(omega1_decomposed(k, z) == omega1_direct(k, z));
  CHECK_THROWS(omega1_direct(1, z));
}

TEST_CASE("Omega2") {
  CHECK(omega2_direct(1, tup({1, 2, 3})) == -180);
  CHECK(omega2_decomposed(1, tup({1, 2, 3})) == -180);
  CHECK(omega2_direct(3, tup({0, 0, 0})) == 0);
  const auto p = tup({Q(5, 2), Q(-5, 2), 4});
  for (int k = 1; k <= 6; ++k) CHECK(omega2_decomposed(k, p) == omega2_direct(k, p));
}

TEST_CASE("alpha4 forms and low orders") {
  CHECK(check_alpha4(tup({1, 2, 3})).pass());
  CHECK(check_alpha4(tup({4, -4, 7})).pass());
  const auto lo = check_low_order_vanishing(tup({1, 2, 3}));
  CHECK(lo.pass());
  CHECK(lo.samples_run == 2);
}

TEST_CASE("cubic identity") {
  CHECK(check_cubic_identity(1, RationalTuple({1, 2})).pass());
  for (int k = 1; k <= 6; ++k) {
    CHECK(check_cubic_identity(k, RationalTuple({Q(2, 3), Q(-5, 4)})).pass());
    CHECK(check_cubic_identity(k, RationalTuple({3, -3})).pass());
  }
}

TEST_CASE("factorial inequality") {
  const auto r = check_factorial(4, 6);
  CHECK(r.pass());
  CHECK(r.samples_run > 0);
  CHECK(check_factorial(6, 10).pass());
}

TEST_CASE("Theta bounds") {
  const auto t = tup({3, -1, 5});
  const auto [a0, b0] = theta_bounds(0, t);
  CHECK(a0 == 28);
  CHECK(b0 == 8);
  const auto z = RationalTuple::from_full({0, 0, 0, 0});
  for (int k = 1; k <= 3; ++k) {
    const auto [a, b] = theta_bounds(k, z);
    CHECK(a == 0);
    CHECK(b == 0);
  }
  for (int k = 0; k <= 5; ++k) {
    const auto [a, b] = theta_bounds(k, t);
    const auto [ah, bh] = theta_bounds_h(k, {3.0L, -1.0L, 5.0L, -7.0L});
    CHECK(static_cast<double>(ah) == doctest::Approx(a.get_d()).epsilon(1e-15));
    CHECK(static_cast<double>(bh) == doctest::Approx(b.get_d()).epsilon(1e-15));
    // monotone in |xi_1|
    const auto [a2, b2] = theta_bounds(k, RationalTuple::from_full({4, -1, 5, -8}));
    CHECK(a2 >= a);
    CHECK(b2 >= b);
  }
}

TEST_CASE("bound samples") {
  const auto s = bound_samples(5, 40, 40);
  CHECK(s.triples.size() == 40);
  CHECK(s.quads.size() == 40);
  CHECK(s.quints.size() == 40);
  for (const auto& q : s.quads) {
    CHECK(q[0] + q[1] + q[2] + q[3] == 0);
    for (int v : q) CHECK(std::abs(v) <= 40);
  }
  const auto again = bound_samples(5, 40, 40);
  CHECK(again.quads == s.quads);

  const auto rep = check_beta_bounds(s, {0.0, 0.1, 1.0}, kdvg::kIdentityC);
  CHECK(rep.pass());
  CHECK(rep.samples_run > 0);
}

TEST_CASE("reports") {
  CheckReport a{"x", 3, {}, 0.5};
  CheckReport b{"x", 2, {{"(1,2)", "1", "2"}}, 0.25};
  a.merge(b);
  CHECK(a.samples_run == 5);
  CHECK_FALSE(a.pass());
  CHECK(a.to_json().find("\"(1,2)\"") != std::string::npos);
}

}
