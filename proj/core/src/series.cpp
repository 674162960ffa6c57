#include "kdvg/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdvg/error.hpp"

namespace kdvg {

double CoshWeight::value(double xi) const {
  return constant - scale + scale * std::cosh(sigma_eff * xi);
}

VarValues var_values(double x1, double x2, double x3, double x4) {
  return {x1, x2, x3, x4, x1 + x2, x1 + x3, x1 + x4, x2 + x3, x2 + x4, x3 + x4};
}

VarValues var_values3(double x1, double x2, double x3) {
  return {x1, x2, x3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
}

namespace {

constexpr Arg P(Var v) { return {1, v}; }
constexpr Arg M(Var v) { return {-1, v}; }
using enum Var;

std::vector<Piece> make_omega1() {
  // Omega1 / (x1 x2 x3 x4). In the first group the xi1/xi2 column enters with -,
  // the xi3 terms with +; the exact identity tests pin these signs.
  return {
      {-1, {P(x1)}, {P(x1), M(x3), M(s34)}},
      {-1, {P(x2)}, {P(x2), M(x3), M(s34)}},
      {1, {P(x1)}, {M(x1), P(x2), P(s24)}},
      {1, {P(x3)}, {M(x3), P(x2), P(s24)}},
      {1, {P(x2)}, {M(x2), P(x1), P(s14)}},
      {1, {P(x3)}, {M(x3), P(x1), P(s14)}},
      {1, {P(x1)}, {M(x1), P(x4), P(s34)}},
      {1, {P(x2)}, {M(x2), P(x4), P(s34)}},
      {-2, {}, {P(x1), P(s14)}},
      {-2, {}, {P(x2), P(s24)}},
      {-2, {}, {P(x3), P(s34)}},
      {-2, {}, {P(x4), P(s34)}},
      {-1, {}, {M(x4), P(x1), P(s13)}},
      {-1, {}, {M(x3), P(x4), P(s24)}},
      {-1, {}, {M(x4), P(x2), P(s23)}},
      {-1, {}, {M(x4), P(x3), P(s23)}},
  };
}

std::vector<Piece> make_omega2() {
  // Omega2 / ((x1+x2)(x1+x3)(x1+x4)); the doubled h(-x1,x4) term and the j = 0
  // correction are merged into one piece.
  return {
      {1, {}, {M(x1), P(x4)}},
      {1, {}, {M(x2), P(x3)}},
      {-1, {P(x3)}, {M(x3), P(x1), M(x4)}},
      {1, {P(x4)}, {P(x4), M(x2), P(x3)}},
      {1, {}, {M(x1), P(x4), P(x2), M(x4)}},
      {-1, {P(x4)}, {M(x4), P(x3), M(x2)}},
      {-1, {P(x4)}, {M(x4), P(x4), M(x1)}},
      {1, {P(x4), P(x1)}, {M(x4), M(x1), P(x3), M(x2)}},
      {1, {P(x4), P(x2)}, {M(x4), M(x2), P(x4), M(x1)}},
  };
}

std::vector<Piece> make_beta4() {
  std::vector<Piece> out = make_omega1();
  for (Piece p : make_omega2()) {
    p.coef = -p.coef;
    out.push_back(std::move(p));
  }
  return out;
}

double binom(int n, int r) {
  if (r < 0 || n < r) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Streams h_0, h_1, ... of a fixed argument list.
class HStream {
 public:
  explicit HStream(std::vector<long double> a) : a_(std::move(a)), cur_(a_.size(), 1.0L) {}
  long double value() const { return cur_[0]; }
  int degree() const { return n_; }
  void advance() {
    const int r = static_cast<int>(a_.size());
    cur_[r - 1] *= a_[r - 1];
    for (int i = r - 2; i >= 0; --i) cur_[i] = a_[i] * cur_[i] + cur_[i + 1];
    ++n_;
  }

 private:
  std::vector<long double> a_;
  std::vector<long double> cur_;
  int n_ = 0;
};

}  // namespace

const std::vector<Piece>& omega1_pieces() {
  static const std::vector<Piece> p = make_omega1();
  return p;
}
const std::vector<Piece>& omega2_pieces() {
  static const std::vector<Piece> p = make_omega2();
  return p;
}
const std::vector<Piece>& beta4_pieces() {
  static const std::vector<Piece> p = make_beta4();
  return p;
}
const std::vector<Piece>& beta3_pieces() {
  static const std::vector<Piece> p = {
      {1, {}, {P(x3), M(x1)}},
      {1, {}, {P(x3), M(x2)}},
      {1, {}, {P(x1), M(x2)}},
  };
  return p;
}

double h_poly(int n, const std::vector<double>& args) {
  if (n < 0 || args.empty()) return n == 0 ? 1.0 : 0.0;
  HStream s({args.begin(), args.end()});
  for (int i = 0; i < n; ++i) s.advance();
  return static_cast<double>(s.value());
}

double piece_sum(const std::vector<Piece>& pieces, const VarValues& v, int degree) {
  long double total = 0.0L;
  for (const Piece& p : pieces) {
    const int n = degree - static_cast<int>(p.pre.size());
    if (n < 0) continue;
    long double pre = p.coef;
    for (const Arg& a : p.pre) pre *= a.sign * v[static_cast<int>(a.var)];
    std::vector<double> args;
    for (const Arg& a : p.args) args.push_back(a.sign * v[static_cast<int>(a.var)]);
    total += pre * h_poly(n, args);
  }
  return static_cast<double>(total);
}

SeriesResult series_sum(const std::vector<Piece>& pieces, const VarValues& v, int q,
                        double tol, int kmax) {
  long double rho = 0.0L;
  for (double x : v) rho = std::max<long double>(rho, std::abs(x));
  if (rho == 0.0L) rho = 1.0L;

  struct Live {
    long double pre;
    int npre;
    int r;
    HStream h;
  };
  std::vector<Live> live;
  live.reserve(pieces.size());
  for (const Piece& p : pieces) {
    long double pre = p.coef;
    for (const Arg& a : p.pre) pre *= a.sign * v[static_cast<int>(a.var)] / rho;
    std::vector<long double> args;
    for (const Arg& a : p.args) args.push_back(a.sign * v[static_cast<int>(a.var)] / rho);
    live.push_back({pre, static_cast<int>(p.pre.size()), static_cast<int>(args.size()),
                    HStream(std::move(args))});
  }

  // majorant of |piece sum| at degree 2j with all normalized arguments in [-1, 1]
  auto majorant = [&](int j) {
    double m = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const int n = 2 * j - live[i].npre;
      if (n >= 0) m += std::abs(pieces[i].coef) * binom(n + live[i].r - 1, live[i].r - 1);
    }
    return m;
  };

  long double f = 1.0L;  // rho^{2j} / (2j+q)!
  for (int i = 2; i <= q; ++i) f /= i;
  long double sum = 0.0L, abs_sum = 0.0L;
  const long double r2 = rho * rho;
  for (int j = 0; j < kmax; ++j) {
    long double t = 0.0L;
    for (Live& L : live) {
      const int n = 2 * j - L.npre;
      if (n < 0) continue;
      while (L.h.degree() < n) L.h.advance();
      t += L.pre * L.h.value();
    }
    sum += f * t;
    abs_sum += std::abs(f * t);
    const long double f1 = f * r2 / ((2.0L * j + q + 1) * (2.0L * j + q + 2));
    const long double f2 = f1 * r2 / ((2.0L * j + q + 3) * (2.0L * j + q + 4));
    const long double b1 = f1 * majorant(j + 1);
    const long double b2 = f2 * majorant(j + 2);
    const long double scale = std::max(std::abs(sum), 1e-6L * abs_sum);
    if (b2 <= 0.5L * b1 && 2.0L * b1 <= tol * scale) return {sum, j + 1};
    if (abs_sum == 0.0L && b1 == 0.0L) return {sum, j + 1};
    f = f1;
  }
  throw DomainError("series did not reach tol=" + std::to_string(tol) + " within " +
                    std::to_string(kmax) + " terms (rho=" +
                    std::to_string(static_cast<double>(rho)) + ")");
}

}  // namespace kdvg
