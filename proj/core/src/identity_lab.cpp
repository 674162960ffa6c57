#include "kdvg/identity_lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kdvg/error.hpp"
#include "kdvg/multilinear.hpp"
#include "kdvg/parallel.hpp"
#include "kdvg/series.hpp"

namespace kdvg::lab {

// ── tuples ──────────────────────────────────────────────────────────────

RationalTuple::RationalTuple(std::vector<Q> free_components) : xi_(std::move(free_components)) {
  Q s = 0;
  for (const Q& q : xi_) s += q;
  xi_.push_back(-s);
  flag();
}

RationalTuple RationalTuple::from_full(std::vector<Q> components) {
  Q s = 0;
  for (const Q& q : components) s += q;
  if (s != 0) throw DomainError("RationalTuple: components do not sum to zero");
  RationalTuple t;
  t.xi_ = std::move(components);
  t.flag();
  return t;
}

void RationalTuple::flag() {
  for (auto& q : xi_) q.canonicalize();
  has_zero_ = std::any_of(xi_.begin(), xi_.end(), [](const Q& q) { return q == 0; });
  has_zero_pair_ = false;
  for (std::size_t i = 0; i < xi_.size(); ++i)
    for (std::size_t j = i + 1; j < xi_.size(); ++j)
      if (xi_[i] + xi_[j] == 0) has_zero_pair_ = true;
}

std::string RationalTuple::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    if (i) s += ",";
    s += xi_[i].get_str();
  }
  return s + ")";
}

std::uint64_t TupleGen::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int TupleGen::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

RationalTuple TupleGen::random(int k, int num_range, int max_den) {
  std::vector<Q> v;
  for (int i = 0; i + 1 < k; ++i) v.emplace_back(uniform(-num_range, num_range), uniform(1, max_den));
  return RationalTuple(std::move(v));
}

RationalTuple TupleGen::degenerate(int k, int num_range) {
  std::vector<Q> v;
  for (int i = 0; i + 1 < k; ++i) v.emplace_back(uniform(-num_range, num_range), uniform(1, 3));
  if (next() & 1) {
    v[uniform(0, k - 2)] = 0;
  } else {
    v[1] = -v[0];
  }
  return RationalTuple(std::move(v));
}

// ── reports ─────────────────────────────────────────────────────────────

void CheckReport::merge(const CheckReport& other) {
  samples_run += other.samples_run;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  elapsed += other.elapsed;
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["check_name"] = check_name;
  j["pass"] = pass();
  j["samples_run"] = samples_run;
  j["elapsed_s"] = elapsed;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures) j["failures"].push_back({{"tuple", f.tuple}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return j.dump(2);
}

namespace {

Q pw(const Q& x, int n) {
  if (n < 0) throw DomainError("pw: negative exponent");
  Q r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// sum_{m+l=n} a^m b^l, empty for n < 0
Q h2(int n, const Q& a, const Q& b) {
  Q s = 0;
  for (int m = 0; m <= n; ++m) s += pw(a, m) * pw(b, n - m);
  return s;
}

int sgn(int i) { return (i % 2 == 0) ? 1 : -1; }

void record(CheckReport& rep, const std::string& tuple, const Q& lhs, const Q& rhs) {
  ++rep.samples_run;
  if (lhs != rhs) rep.failures.push_back({tuple, lhs.get_str(), rhs.get_str()});
}

void need(const RationalTuple& t, std::size_t k, const char* who) {
  if (t.size() != k) throw DomainError(std::string(who) + ": wrong tuple arity");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ── Omega families ──────────────────────────────────────────────────────

Q omega1_direct(int k, const RationalTuple& t) {
  need(t, 4, "omega1_direct");
  if (k < 2) throw DomainError("omega1_direct: k < 2");
  const int e = 2 * k;
  return pw(t[0], e) + pw(t[1], e) + pw(t[2], e) + pw(t[3], e) - pw(t[0] + t[1], e) -
         pw(t[0] + t[2], e) - pw(t[0] + t[3], e);
}

Q omega1_decomposed(int k, const RationalTuple& t) {
  need(t, 4, "omega1_decomposed");
  if (k < 2) throw DomainError("omega1_decomposed: k < 2");
  const Q &x1 = t[0], &x2 = t[1], &x3 = t[2], &x4 = t[3];
  const Q s13 = x1 + x3, s14 = x1 + x4, s23 = x2 + x3, s24 = x2 + x4, s34 = x3 + x4;
  Q acc = 0;
  // i + j = 2k - 5 (empty for k = 2); the first bracket carries the sign fix
  for (int i = 0; i <= 2 * k - 5; ++i) {
    const int j = 2 * k - 5 - i;
    Q g = -(pw(x1, j + 1) + pw(x2, j + 1)) * h2(i, x3, s34) +
          (pw(x1, i + 1) + pw(x3, i + 1)) * h2(j, x2, s24) +
          (pw(x2, i + 1) + pw(x3, i + 1)) * h2(j, x1, s14) +
          (pw(x1, i + 1) + pw(x2, i + 1)) * h2(j, x4, s34);
    acc += sgn(i) * g;
  }
  for (int i = 0; i <= 2 * k - 4; ++i) {
    const int j = 2 * k - 4 - i;
    acc -= 2 * (pw(x1, i) * pw(s14, j) + pw(x2, i) * pw(s24, j) + pw(x3, i) * pw(s34, j) +
                pw(x4, i) * pw(s34, j));
    Q g3 = 0;
    for (int m = 0; m <= j; ++m) g3 += (pw(x2, m) + pw(x3, m)) * pw(s23, j - m);
    acc -= sgn(i) * (pw(x4, i) * h2(j, x1, s13) + pw(x3, i) * h2(j, x4, s24) + pw(x4, i) * g3);
  }
  return acc * x1 * x2 * x3 * x4;
}

Q omega2_direct(int k, const RationalTuple& t) {
  need(t, 4, "omega2_direct");
  if (k < 1) throw DomainError("omega2_direct: k < 1");
  Q s = 0;
  for (std::size_t i = 0; i < 4; ++i) s += pw(t[i], 2 * k + 1);
  return s;
}

Q omega2_decomposed(int k, const RationalTuple& t) {
  need(t, 4, "omega2_decomposed");
  if (k < 1) throw DomainError("omega2_decomposed: k < 1");
  const Q &x1 = t[0], &x2 = t[1], &x3 = t[2], &x4 = t[3];
  const Q n1 = -x1, n2 = -x2, n3 = -x3, n4 = -x4;
  Q acc = 0;
  for (int i = 0; i <= 2 * k - 2; ++i) {
    const int j = 2 * k - 2 - i;
    acc += sgn(i) * (2 * pw(x1, i) * pw(x4, j) + pw(x2, i) * pw(x3, j));
  }
  for (int i = 1; i <= 2 * k - 2; ++i) {
    const int j = 2 * k - 1 - i;
    acc += pw(n3, i) * h2(j - 1, x1, n4) + pw(x4, j) * h2(i - 1, n2, x3);
  }
  for (int i = 0; i <= 2 * k - 3; ++i) {
    const int j = 2 * k - 2 - i;
    acc += sgn(i) * h2(i, x1, n4) * h2(j, x2, n4);
    Q inner = h2(j - 1, x3, n2) + h2(j - 1, x4, n1);
    for (int m = 1; m < j; ++m) {
      const int l = j - m;
      inner += pw(n1, l) * h2(m - 1, x3, n2) + pw(n2, m) * h2(l - 1, x4, n1);
    }
    acc += sgn(i + 1) * pw(x4, i + 1) * inner;
  }
  return acc * (x1 + x2) * (x1 + x3) * (x1 + x4);
}

// ── single checks ───────────────────────────────────────────────────────

CheckReport check_alpha4(const RationalTuple& t) {
  need(t, 4, "check_alpha4");
  CheckReport rep;
  rep.check_name = "alpha4_forms";
  const Q &x1 = t[0], &x2 = t[1], &x3 = t[2], &x4 = t[3];
  const Q cubes = x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3 + x4 * x4 * x4;
  const Q e3 = 3 * (x1 * x2 * x3 + x1 * x2 * x4 + x1 * x3 * x4 + x2 * x3 * x4);
  const Q fac = 3 * (x1 + x2) * (x1 + x3) * (x1 + x4);
  record(rep, t.str(), cubes, e3);
  rep.samples_run -= 1;
  record(rep, t.str(), cubes, fac);
  return rep;
}

CheckReport check_low_order_vanishing(const RationalTuple& t) {
  need(t, 4, "check_low_order_vanishing");
  if (t.has_zero()) throw DomainError("check_low_order_vanishing: degenerate tuple");
  CheckReport rep;
  rep.check_name = "low_order_vanishing";
  Q alpha = 0, prod = 1, inv = 0, lin = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    alpha += t[i] * t[i] * t[i];
    prod *= t[i];
    inv += 1 / t[i];
    lin += t[i];
  }
  const Q pair0 = 4 - 3;  // bracket at k = 0: four ones minus three ones
  const Q pair1 = t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3] - pw(t[0] + t[1], 2) -
                  pw(t[0] + t[2], 2) - pw(t[0] + t[3], 2);
  // c and sigma^{2k} factor out of each term
  const Q term0 = -Q(1, 108) * alpha / prod * pair0 + Q(1, 36) * inv;
  const Q term1 = (-Q(1, 108) * alpha / prod * pair1 + Q(1, 36) * lin) / 2;
  record(rep, t.str() + " k=0", term0, 0);
  record(rep, t.str() + " k=1", term1, 0);
  return rep;
}

CheckReport check_cubic_identity(int k, const RationalTuple& t) {
  need(t, 3, "check_cubic_identity");
  if (k < 1) throw DomainError("check_cubic_identity: k < 1");
  CheckReport rep;
  rep.check_name = "cubic_identity";
  const Q &x1 = t[0], &x2 = t[1], &x3 = t[2];
  const Q lhs = pw(x1, 2 * k + 1) + pw(x2, 2 * k + 1) + pw(x3, 2 * k + 1);
  Q s = 0;
  for (int i = 0; i <= 2 * k - 2; ++i) {
    const int j = 2 * k - 2 - i;
    s += pw(x3, j) * (pw(-x1, i) + pw(-x2, i)) + pw(x1, i) * pw(-x2, j);
  }
  record(rep, t.str() + " k=" + std::to_string(k), lhs, x1 * x2 * x3 * s);
  return rep;
}

CheckReport check_factorial(int p_max, int n_max) {
  if (p_max < 4 || n_max < 1) throw DomainError("check_factorial: need p_max >= 4, n_max >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.check_name = "factorial_inequality";
  std::vector<mpz_class> fact(n_max + 1);
  fact[0] = 1;
  for (int i = 1; i <= n_max; ++i) fact[i] = fact[i - 1] * i;

  std::vector<int> mid;
  for (int p = 4; p <= p_max; ++p) {
    const int slots = p - 2;
    for (int n1 = 0; n1 <= n_max; ++n1) {
      for (int np = n1; np <= n_max; ++np) {
        const mpz_class rhs = fact[n1] * fact[np];
        mid.assign(slots, 0);
        // middle values nondecreasing in [n1, np] with sum n1 + np
        std::function<void(int, int, int)> rec = [&](int pos, int lo, int rest) {
          const int left = slots - pos;
          if (left == 0) {
            if (rest != 0) return;
            mpz_class lhs = 1;
            for (int v : mid) lhs *= fact[v];
            ++rep.samples_run;
            if (lhs > rhs) {
              std::string tup = "(" + std::to_string(n1);
              for (int v : mid) tup += "," + std::to_string(v);
              tup += "," + std::to_string(np) + ")";
              rep.failures.push_back({tup, lhs.get_str(), rhs.get_str()});
            }
            return;
          }
          for (int v = lo; v <= np; ++v) {
            if (v * left > rest) break;
            if (np * (left - 1) + v < rest) continue;
            mid[pos] = v;
            rec(pos + 1, v, rest - v);
          }
        };
        rec(0, n1, n1 + np);
      }
    }
  }
  rep.elapsed = seconds_since(t0);
  return rep;
}

// ── Theta majorants ─────────────────────────────────────────────────────

namespace {

const int kTriples[24][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 1}, {0, 2, 3}, {0, 3, 1}, {0, 3, 2},
                             {1, 0, 2}, {1, 0, 3}, {1, 2, 0}, {1, 2, 3}, {1, 3, 0}, {1, 3, 2},
                             {2, 0, 1}, {2, 0, 3}, {2, 1, 0}, {2, 1, 3}, {2, 3, 0}, {2, 3, 1},
                             {3, 0, 1}, {3, 0, 2}, {3, 1, 0}, {3, 1, 2}, {3, 2, 0}, {3, 2, 1}};

// Argument lists of every h_k making up Theta_1 + Theta_2 (a = |xi|, pair sums absolute).
template <class T>
std::vector<std::vector<T>> theta_args(const std::array<T, 4>& x) {
  using std::abs;
  std::array<T, 4> a;
  for (int i = 0; i < 4; ++i) a[i] = abs(x[i]);
  auto ps = [&](int p, int q) { return abs(x[p] + x[q]); };
  std::vector<std::vector<T>> out = {
      {a[0], ps(0, 3)}, {a[1], ps(1, 3)}, {a[2], ps(2, 3)}, {a[3], ps(2, 3)}};
  for (const auto& tr : kTriples) out.push_back({a[tr[0]], a[tr[1]], ps(tr[1], tr[2])});
  const std::vector<std::vector<T>> t2 = {{a[0], a[3]},       {a[1], a[2]},       {a[2], a[0], a[3]},
                                          {a[3], a[1], a[2]}, {a[3], a[3], a[0]}, {a[0], a[3], a[1], a[3]},
                                          {a[3], a[0], a[2], a[1]}, {a[3], a[1], a[3], a[0]}};
  out.insert(out.end(), t2.begin(), t2.end());
  return out;
}

constexpr std::size_t kTheta1Count = 4 + 24;

// h_k(args) for k = 0, 1, 2, ... one step at a time.
struct HStep {
  std::vector<long double> a, cur;
  explicit HStep(std::vector<long double> args) : a(std::move(args)), cur(a.size(), 1.0L) {}
  long double value() const { return cur[0]; }
  void advance() {
    const std::size_t r = a.size();
    cur[r - 1] *= a[r - 1];
    for (std::size_t i = r - 1; i-- > 0;) cur[i] = a[i] * cur[i] + cur[i + 1];
  }
};

}  // namespace

std::pair<Q, Q> theta_bounds(int k, const RationalTuple& t) {
  need(t, 4, "theta_bounds");
  if (k < 0) throw DomainError("theta_bounds: k < 0");
  auto A = [&](int i) { return Q(abs(t[i])); };
  auto P = [&](int p, int q) { return Q(abs(t[p] + t[q])); };
  Q th1 = 0, th2 = 0;
  for (int i = 0; i <= k; ++i) {
    const int j = k - i;
    th1 += pw(A(0), i) * pw(P(0, 3), j) + pw(A(1), i) * pw(P(1, 3), j) + pw(A(2), i) * pw(P(2, 3), j) +
           pw(A(3), i) * pw(P(2, 3), j);
    for (const auto& tr : kTriples) th1 += pw(A(tr[0]), i) * h2(j, A(tr[1]), P(tr[1], tr[2]));

    th2 += pw(A(0), i) * pw(A(3), j) + pw(A(1), i) * pw(A(2), j);
    th2 += pw(A(2), i) * h2(j, A(0), A(3));
    th2 += pw(A(3), j) * h2(i, A(1), A(2));
    th2 += pw(A(3), i) * h2(j, A(3), A(0));
    th2 += h2(i, A(0), A(3)) * h2(j, A(1), A(3));
    Q br = 0;
    for (int m = 0; m <= j; ++m) {
      const int l = j - m;
      br += pw(A(0), l) * h2(m, A(2), A(1)) + pw(A(1), m) * h2(l, A(3), A(0));
    }
    th2 += pw(A(3), i) * br;
  }
  return {th1, th2};
}

std::pair<long double, long double> theta_bounds_h(int k, const std::array<long double, 4>& xi) {
  if (k < 0) throw DomainError("theta_bounds_h: k < 0");
  const auto lists = theta_args(xi);
  long double th1 = 0, th2 = 0;
  for (std::size_t s = 0; s < lists.size(); ++s) {
    HStep h(lists[s]);
    for (int i = 0; i < k; ++i) h.advance();
    (s < kTheta1Count ? th1 : th2) += h.value();
  }
  return {th1, th2};
}

// ── bound suite ─────────────────────────────────────────────────────────

BoundSamples bound_samples(std::uint64_t seed, int count, int max_abs) {
  TupleGen g(seed);
  BoundSamples out;
  // draws free components until the closing one also fits in [-max_abs, max_abs]
  auto draw = [&](int k, int idx) {
    std::vector<int> v(k);
    for (;;) {
      int s = 0;
      for (int i = 0; i + 1 < k; ++i) s += (v[i] = g.uniform(-max_abs, max_abs));
      if (idx % 4 == 3) {
        if (idx % 8 == 3) v[g.uniform(0, k - 2)] = 0;
        else v[1] = -v[0];
        s = 0;
        for (int i = 0; i + 1 < k; ++i) s += v[i];
      }
      v[k - 1] = -s;
      if (std::abs(v[k - 1]) <= max_abs) return v;
    }
  };
  for (int i = 0; i < count; ++i) {
    auto v = draw(3, i);
    out.triples.push_back({v[0], v[1], v[2]});
  }
  for (int i = 0; i < count; ++i) {
    auto v = draw(4, i);
    out.quads.push_back({v[0], v[1], v[2], v[3]});
  }
  for (int i = 0; i < count; ++i) {
    auto v = draw(5, i);
    out.quints.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  return out;
}

namespace {

// The bounds are stated for the cosh weight; the series needs more terms there
// than the default cap once pair sums reach ~100.
constexpr int kBoundKmax = 400;
constexpr double kBoundTol = 1e-13;
// roundoff plus truncation of the series, relative to the value
constexpr double kTailAllowance = 1e-10;

Cx beta4_literal(double sigma, const double* xi, Cx c) {
  const auto v = var_values(sigma * xi[0], sigma * xi[1], sigma * xi[2], sigma * xi[3]);
  const SeriesResult r = series_sum(beta4_pieces(), v, 4, kBoundTol, kBoundKmax);
  const double s4 = sigma * sigma * sigma * sigma;
  return c / (108.0 * Cx(0.0, 1.0)) * (s4 * static_cast<double>(r.value));
}

Cx beta3_literal(double sigma, const double* xi) {
  const auto v = var_values3(sigma * xi[0], sigma * xi[1], sigma * xi[2]);
  const SeriesResult r = series_sum(beta3_pieces(), v, 2, kBoundTol, kBoundKmax);
  return -(sigma * sigma / 9.0) * static_cast<double>(r.value);
}

Cx m5_literal(double sigma, const double* xi, Cx c) {
  Cx acc = 0.0;
  for (int d = 0; d < 5; ++d)
    for (int e = d + 1; e < 5; ++e) {
      double t[4];
      int n = 0;
      for (int i = 0; i < 5; ++i)
        if (i != d && i != e) t[n++] = xi[i];
      t[3] = xi[d] + xi[e];
      acc += beta4_literal(sigma, t, c) * t[3];
    }
  return Cx(0.0, -2.0) * acc / 10.0;
}

// sum_k sigma^{k+4} (Theta_1(k) + Theta_2(k)) / (k+4)!
long double theta_majorant(double sigma, const double* xi) {
  std::array<long double, 4> y;
  for (int i = 0; i < 4; ++i) y[i] = static_cast<long double>(sigma) * xi[i];
  std::vector<HStep> hs;
  long double ymax = 0;
  for (auto& a : theta_args(y)) {
    for (long double v : a) ymax = std::max(ymax, v);
    hs.emplace_back(std::move(a));
  }
  long double sum = 0, fact = 24;  // 4!
  for (int k = 0;; ++k) {
    long double theta = 0;
    for (auto& h : hs) theta += h.value();
    const long double term = theta / fact;
    sum += term;
    if (k > 4 * ymax + 20 && term <= 1e-22L * sum) break;
    if (k > 4000) break;
    for (auto& h : hs) h.advance();
    fact *= (k + 5);
  }
  const long double s4 = static_cast<long double>(sigma) * sigma * sigma * sigma;
  return s4 * sum;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <std::size_t K>
std::string tuple_str(const std::array<int, K>& t, double sigma) {
  std::string s = "sigma=" + fmt(sigma) + " (";
  for (std::size_t i = 0; i < K; ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

struct Verdict {
  long samples = 0;
  std::vector<Failure> fails;
  void check(const std::string& label, const std::string& tup, double lhs, double rhs) {
    ++samples;
    if (!std::isfinite(lhs) || !(rhs - lhs > kTailAllowance * lhs))
      fails.push_back({label + " " + tup, fmt(lhs), fmt(rhs)});
  }
};

}  // namespace

CheckReport check_beta_bounds(const BoundSamples& samples, const std::vector<double>& sigma_grid,
                              std::complex<double> c) {
  const auto t0 = std::chrono::steady_clock::now();
  const double cabs = std::abs(c);
  CheckReport rep;
  rep.check_name = "beta_bounds";

  const std::size_t nq = samples.quads.size(), nt = samples.triples.size(), n5 = samples.quints.size();
  const std::size_t total = nq + nt + n5;
  std::vector<Verdict> per(total);

  parallel_for(total, [&](std::size_t idx) {
    Verdict& out = per[idx];
    for (double sigma : sigma_grid) {
      if (sigma < 0) throw DomainError("check_beta_bounds: negative sigma");
      if (idx < nq) {
        const auto& q = samples.quads[idx];
        const double xi[4] = {double(q[0]), double(q[1]), double(q[2]), double(q[3])};
        const std::string tup = tuple_str(q, sigma);
        const double sabs = std::abs(xi[0]) + std::abs(xi[1]) + std::abs(xi[2]) + std::abs(xi[3]);
        if (sigma == 0.0) {
          out.samples += 3;  // beta4 vanishes identically
          continue;
        }
        const double b = std::abs(beta4_literal(sigma, xi, c));
        const double e = std::exp(sigma * sabs);
        out.check("beta4_majorant", tup, b, static_cast<double>(cabs / 54.0 * theta_majorant(sigma, xi)));
        if (sigma <= 1.0) {
          out.check("beta4_exp", tup, b, 43.0 * cabs / 54.0 * std::pow(sigma, 4) * e);
          double pairs = 0;
          for (int p = 0; p < 4; ++p)
            for (int r = 0; r < 4; ++r)
              if (p != r) pairs += 1.0 / ((1 + std::abs(xi[p])) * (1 + std::abs(xi[r])));
          out.check("beta4_pairwise", tup, b, cabs / 9.0 * pairs * e);
        }
      } else if (idx < nq + nt) {
        if (sigma == 0.0 || sigma > 1.0) continue;
        const auto& q = samples.triples[idx - nq];
        const double xi[3] = {double(q[0]), double(q[1]), double(q[2])};
        double sabs = 0, recip = 0;
        for (double x : xi) {
          sabs += std::abs(x);
          recip += 1.0 / (1 + std::abs(x));
        }
        out.check("beta3_exp", tuple_str(q, sigma), std::abs(beta3_literal(sigma, xi)),
                  recip * std::exp(sigma * sabs));
      } else {
        if (sigma == 0.0 || sigma > 1.0) continue;
        const auto& q = samples.quints[idx - nq - nt];
        double xi[5], sabs = 0, xmax = 0;
        for (int i = 0; i < 5; ++i) {
          xi[i] = q[i];
          sabs += std::abs(xi[i]);
          xmax = std::max(xmax, std::abs(xi[i]));
        }
        out.check("m5_exp", tuple_str(q, sigma), std::abs(m5_literal(sigma, xi, c)),
                  86.0 * cabs / 27.0 * std::pow(sigma, 4) * std::exp(sigma * sabs) * xmax);
      }
    }
  });
  for (const auto& v : per) {
    rep.samples_run += v.samples;
    rep.failures.insert(rep.failures.end(), v.fails.begin(), v.fails.end());
  }
  rep.elapsed = seconds_since(t0);
  return rep;
}

// ── the suite ───────────────────────────────────────────────────────────

std::vector<CheckReport> run_identity_suite(std::uint64_t seed) {
  TupleGen g(seed);
  std::vector<CheckReport> out;
  // every fifth tuple degenerate, rationals with small denominators mixed in
  auto tuple4 = [&](int i) {
    if (i % 5 == 4) return g.degenerate(4);
    return g.random(4, 40, (i % 2) ? 7 : 1);
  };
  using clock = std::chrono::steady_clock;

  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "omega1_decomposition";
    for (int i = 0; i < 500; ++i) {
      const auto t = tuple4(i);
      for (int k = 2; k <= 6; ++k) record(r, t.str() + " k=" + std::to_string(k), omega1_decomposed(k, t), omega1_direct(k, t));
    }
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "omega2_decomposition";
    for (int i = 0; i < 500; ++i) {
      const auto t = tuple4(i);
      for (int k = 1; k <= 6; ++k) record(r, t.str() + " k=" + std::to_string(k), omega2_decomposed(k, t), omega2_direct(k, t));
    }
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "alpha4_forms";
    for (int i = 0; i < 1000; ++i) r.merge(check_alpha4(tuple4(i)));
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "omega1_k2";
    for (int i = 0; i < 200; ++i) {
      const auto t = tuple4(i);
      record(r, t.str(), omega1_direct(2, t), -12 * t[0] * t[1] * t[2] * t[3]);
    }
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "cubic_identity";
    for (int i = 0; i < 500; ++i) {
      const auto t = (i % 5 == 4) ? g.degenerate(3) : g.random(3, 40, (i % 2) ? 7 : 1);
      for (int k = 1; k <= 6; ++k) r.merge(check_cubic_identity(k, t));
    }
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  {
    auto t0 = clock::now();
    CheckReport r;
    r.check_name = "low_order_vanishing";
    int done = 0;
    while (done < 200) {
      const auto t = g.random(4, 40, (done % 2) ? 7 : 1);
      if (t.has_zero()) continue;
      r.merge(check_low_order_vanishing(t));
      ++done;
    }
    r.elapsed = seconds_since(t0);
    out.push_back(r);
  }
  out.push_back(check_factorial(6, 25));
  return out;
}

}  // namespace kdvg::lab
