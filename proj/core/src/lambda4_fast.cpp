// Lambda_4(beta4) without visiting 4-tuples.
//
// Every piece of the beta4 series is coef * prod(pre) * h_n(args) where the
// arguments are single frequencies and at most one pair sum. Fix a pairing
// {P,Q}|{R,S} compatible with that pair sum and write s = xi_P + xi_Q. Then
//   h_n(GA, GB, g s) = sum_{a+b+c=n} h_a(GA) h_b(GB) (g s)^c,
// and the hyperplane sum factors through the pair moments
//   A_a(s) = sum_{kP+kQ=s} preA h_a(GA) u(kP) u(kQ),
// one lattice convolution per moment order, followed by a convolution in the
// order index for each s.
#include <algorithm>
#include <cmath>
#include <string>

#include "kdvg/error.hpp"
#include "kdvg/multilinear.hpp"
#include "kdvg/parallel.hpp"

namespace kdvg {
namespace {

using LD = long double;

int var_slot(Var v) { return static_cast<int>(v); }
bool is_single(Var v) { return var_slot(v) < 4; }

// members of a pair-sum variable, 0-based
std::array<int, 2> pair_of(Var v) {
  switch (v) {
    case Var::s12: return {0, 1};
    case Var::s13: return {0, 2};
    case Var::s14: return {0, 3};
    case Var::s23: return {1, 2};
    case Var::s24: return {1, 3};
    default: return {2, 3};
  }
}

struct SideTerm {
  int who;  // 0 -> first member of the pair, 1 -> second
  double sign;
};

struct PieceLayout {
  std::array<int, 2> pa, pb;
  std::vector<SideTerm> preA, preB, argA, argB;
  bool has_s = false;
  double g = 0.0;  // pair-sum argument = g * s, s the pair-A sum
};

PieceLayout layout(const Piece& p) {
  PieceLayout L;
  L.pa = {0, 3};
  for (const Arg& a : p.args)
    if (!is_single(a.var)) {
      L.pa = pair_of(a.var);
      L.has_s = true;
    }
  std::array<int, 2> rest{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != L.pa[0] && i != L.pa[1]) rest[n++] = i;
  L.pb = rest;
  auto place = [&](const Arg& a, std::vector<SideTerm>& A, std::vector<SideTerm>& B) {
    const int v = var_slot(a.var);
    if (v == L.pa[0]) A.push_back({0, double(a.sign)});
    else if (v == L.pa[1]) A.push_back({1, double(a.sign)});
    else if (v == L.pb[0]) B.push_back({0, double(a.sign)});
    else B.push_back({1, double(a.sign)});
  };
  for (const Arg& a : p.pre) place(a, L.preA, L.preB);
  for (const Arg& a : p.args) {
    if (is_single(a.var)) {
      place(a, L.argA, L.argB);
    } else {
      const auto pr = pair_of(a.var);
      const bool same = (pr[0] == L.pa[0] && pr[1] == L.pa[1]);
      L.g = same ? a.sign : -a.sign;  // s_RS = -s_PQ on the hyperplane
    }
  }
  return L;
}

// Moments M[s][a] = sum_{k1+k2=s} pre * h_a(args) * u(k1) u(k2) over |s| <= 2 cut.
std::vector<std::vector<Cx>> pair_moments(const std::vector<SideTerm>& pre,
                                          const std::vector<SideTerm>& args,
                                          const std::vector<Cx>& u, const std::vector<double>& x,
                                          int cut, int D) {
  const int width = 2 * cut + 1;
  std::vector<std::vector<Cx>> M(4 * cut + 1, std::vector<Cx>(D + 1, 0.0));
  std::vector<double> h(D + 1), cur;
  for (int i = 0; i < width; ++i) {
    if (u[i] == Cx(0.0)) continue;
    for (int j = 0; j < width; ++j) {
      if (u[j] == Cx(0.0)) continue;
      const double v[2] = {x[i], x[j]};
      double pf = 1.0;
      for (const SideTerm& t : pre) pf *= t.sign * v[t.who];
      const Cx w = pf * u[i] * u[j];
      // h_a of the side arguments by the usual suffix recurrence
      const int r = static_cast<int>(args.size());
      if (r == 0) {
        std::fill(h.begin(), h.end(), 0.0);
        h[0] = 1.0;
      } else {
        cur.assign(r, 1.0);
        h[0] = 1.0;
        for (int a = 1; a <= D; ++a) {
          cur[r - 1] *= args[r - 1].sign * v[args[r - 1].who];
          for (int q = r - 2; q >= 0; --q) cur[q] = args[q].sign * v[args[q].who] * cur[q] + cur[q + 1];
          h[a] = cur[0];
        }
      }
      std::vector<Cx>& row = M[(i - cut) + (j - cut) + 2 * cut];
      for (int a = 0; a <= D; ++a) row[a] += w * h[a];
    }
  }
  return M;
}

double binom(int n, int r) {
  if (r < 0 || n < r) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

Cx lambda4_fast(const SpectralField& field, const CoshWeight& w, double tol) {
  const Grid& g = field.grid;
  const int cut = g.dealias_cut;
  if (w.sigma_eff == 0.0 || w.scale == 0.0) return 0.0;
  const int width = 2 * cut + 1;
  // normalized frequencies: every single and pair sum lies in [-1, 1]
  const double rho = w.sigma_eff * 2.0 * g.xi(cut);
  std::vector<Cx> u(width);
  std::vector<double> x(width);
  std::vector<double> ua(width);
  for (int i = 0; i < width; ++i) {
    u[i] = field(i - cut);
    ua[i] = std::abs(u[i]);
    x[i] = w.sigma_eff * g.xi(i - cut) / rho;
  }

  // sum over the hyperplane of prod |u|, the scale of the tail bound
  std::vector<double> c(4 * cut + 1, 0.0);
  for (int i = 0; i < width; ++i)
    for (int j = 0; j < width; ++j) c[i + j] += ua[i] * ua[j];
  double s_abs = 0.0;
  for (int s = 0; s <= 4 * cut; ++s) s_abs += c[s] * c[4 * cut - s];
  if (s_abs == 0.0) return 0.0;

  const std::vector<Piece>& pieces = beta4_pieces();
  std::vector<PieceLayout> lay;
  for (const Piece& p : pieces) lay.push_back(layout(p));

  auto majorant = [&](int j) {
    double m = 0.0;
    for (const Piece& p : pieces) {
      const int n = 2 * j - static_cast<int>(p.pre.size());
      const int r = static_cast<int>(p.args.size());
      if (n >= 0) m += std::abs(p.coef) * binom(n + r - 1, r - 1);
    }
    return m;
  };
  // f_j = rho^{2j} / (2j+4)!
  auto f_table = [&](int J) {
    std::vector<LD> f(J + 2);
    f[0] = 1.0L / 24.0L;
    for (int j = 0; j + 1 < static_cast<int>(f.size()); ++j)
      f[j + 1] = f[j] * LD(rho) * rho / ((2.0L * j + 5) * (2.0L * j + 6));
    return f;
  };
  // smallest J whose tail majorant is below target (relative to s_abs)
  auto terms_for = [&](double target) {
    for (int J = 1; J < 400; ++J) {
      const auto f = f_table(J + 1);
      const LD b0 = f[J] * majorant(J), b1 = f[J + 1] * majorant(J + 1);
      if (b1 <= 0.5L * b0 && 2.0L * b0 * s_abs <= target) return J;
    }
    throw DomainError("lambda4_fast: series tail not controllable (rho=" + std::to_string(rho) + ")");
  };

  const double pref = -w.scale * std::pow(w.sigma_eff, 4) / 108.0 * g.length;
  int J = terms_for(1e-16 * s_abs);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const int D = 2 * J;
    std::vector<std::vector<LD>> per_piece(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t pi) {
      const Piece& p = pieces[pi];
      const PieceLayout& L = lay[pi];
      const auto A = pair_moments(L.preA, L.argA, u, x, cut, D);
      const auto B = pair_moments(L.preB, L.argB, u, x, cut, D);
      const int npre = static_cast<int>(p.pre.size());
      std::vector<LD> tj(J, 0.0L);
      std::vector<Cx> C(D + 1);
      std::vector<double> gp(D + 1);
      for (int s = -2 * cut; s <= 2 * cut; ++s) {
        const std::vector<Cx>& a = A[s + 2 * cut];
        const std::vector<Cx>& b = B[-s + 2 * cut];
        for (int m = 0; m <= D; ++m) {
          Cx acc = 0.0;
          for (int q = 0; q <= m; ++q) acc += a[q] * b[m - q];
          C[m] = acc;
        }
        const double gs = L.g * (w.sigma_eff * g.xi(s) / rho);
        gp[0] = 1.0;
        for (int q = 1; q <= D; ++q) gp[q] = gp[q - 1] * gs;
        for (int j = 0; j < J; ++j) {
          const int n = 2 * j - npre;
          if (n < 0) continue;
          Cx v = C[n];
          if (L.has_s)
            for (int q = 1; q <= n; ++q) v += C[n - q] * gp[q];
          tj[j] += v.real();  // the imaginary part cancels between s and -s
        }
      }
      for (LD& t : tj) t *= p.coef;
      per_piece[pi] = std::move(tj);
    });
    const auto f = f_table(J);
    std::vector<LD> terms(J, 0.0L);
    for (const auto& tj : per_piece)
      for (int j = 0; j < J; ++j) terms[j] += tj[j];
    LD sum = 0.0L;
    for (int j = 0; j < J; ++j) sum += f[j] * terms[j];
    const double value = static_cast<double>(sum) * pref;
    const double need = tol * std::abs(static_cast<double>(sum)) ;
    if (need >= 1e-16 * s_abs || attempt == 3) return value;
    const int J2 = terms_for(std::max(need, 1e-30 * s_abs));
    if (J2 <= J) return value;
    J = J2;
  }
  return 0.0;  // unreachable
}

Cx lambda4_fast(const SpectralField& field, double sigma, double tol) {
  return lambda4_fast(field, CoshWeight::energy(sigma), tol);
}

}  // namespace kdvg
