#pragma once
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kdvg::lab {

using Q = mpq_class;

// k rationals on the hyperplane; the last component is the negated sum of the others.
class RationalTuple {
 public:
  explicit RationalTuple(std::vector<Q> free_components);
  static RationalTuple from_full(std::vector<Q> components);  // checks the sum

  std::size_t size() const { return xi_.size(); }
  const Q& operator[](std::size_t i) const { return xi_[i]; }
  bool has_zero() const { return has_zero_; }
  bool has_zero_pair() const { return has_zero_pair_; }
  std::string str() const;

 private:
  RationalTuple() = default;
  void flag();
  std::vector<Q> xi_;
  bool has_zero_ = false;
  bool has_zero_pair_ = false;
};

struct Failure {
  std::string tuple, lhs, rhs;
};

struct CheckReport {
  std::string check_name;
  long samples_run = 0;
  std::vector<Failure> failures;
  double elapsed = 0.0;

  bool pass() const { return failures.empty(); }
  void merge(const CheckReport& other);
  std::string to_json() const;
};

Q omega1_direct(int k, const RationalTuple& t);
Q omega1_decomposed(int k, const RationalTuple& t);
Q omega2_direct(int k, const RationalTuple& t);
Q omega2_decomposed(int k, const RationalTuple& t);

CheckReport check_alpha4(const RationalTuple& t);
CheckReport check_low_order_vanishing(const RationalTuple& t);
CheckReport check_cubic_identity(int k, const RationalTuple& triple);
CheckReport check_factorial(int p_max, int n_max);

// Theta_1(k), Theta_2(k) by literal nested sums over |xi| and |pair sums|.
std::pair<Q, Q> theta_bounds(int k, const RationalTuple& t);
// Same quantities through complete homogeneous polynomials, in long double.
std::pair<long double, long double> theta_bounds_h(int k, const std::array<long double, 4>& xi);

struct BoundSamples {
  std::vector<std::array<int, 3>> triples;
  std::vector<std::array<int, 4>> quads;
  std::vector<std::array<int, 5>> quints;
};
// count of each arity, |xi_i| <= max_abs; every fourth sample is forced degenerate.
BoundSamples bound_samples(std::uint64_t seed, int count, int max_abs);

CheckReport check_beta_bounds(const BoundSamples& samples, const std::vector<double>& sigma_grid,
                              std::complex<double> c);

class TupleGen {
 public:
  explicit TupleGen(std::uint64_t seed) : state_(seed) {}
  RationalTuple random(int k, int num_range = 40, int max_den = 1);
  // zero components and zero pair sums, alternating
  RationalTuple degenerate(int k, int num_range = 40);
  std::uint64_t next();
  int uniform(int lo, int hi);

 private:
  std::uint64_t state_;
};

// The whole exact suite with the sample counts of the acceptance run.
std::vector<CheckReport> run_identity_suite(std::uint64_t seed);

}  // namespace kdvg::lab
