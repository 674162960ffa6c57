#include "kdvg/multilinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

#include "kdvg/error.hpp"
#include "kdvg/gevrey_ops.hpp"
#include "kdvg/parallel.hpp"

namespace kdvg {
namespace {

constexpr Cx I{0.0, 1.0};

void require_hyperplane(const double* xi, int k, const char* who) {
  double s = 0.0, a = 0.0;
  for (int i = 0; i < k; ++i) {
    s += xi[i];
    a += std::abs(xi[i]);
  }
  if (std::abs(s) > 1e-9 * (a + 1.0))
    throw DomainError(std::string(who) + ": tuple is off the hyperplane (sum " +
                      std::to_string(s) + ")");
}

}  // namespace

Multiplier symmetrize(const Multiplier& mult) {
  if (mult.arity < 1 || mult.arity > 5) throw DomainError("symmetrize: arity must be 1..5");
  if (mult.symmetric) return mult;
  Multiplier out;
  out.arity = mult.arity;
  out.symmetric = true;
  out.label = mult.label + "_sym";
  auto inner = mult.eval;
  const int k = mult.arity;
  out.eval = [inner, k](const double* xi) {
    std::array<int, 5> p{0, 1, 2, 3, 4};
    std::array<double, 5> y{};
    Cx acc = 0.0;
    int count = 0;
    do {
      for (int i = 0; i < k; ++i) y[i] = xi[p[i]];
      acc += inner(y.data());
      ++count;
    } while (std::next_permutation(p.begin(), p.begin() + k));
    return acc / static_cast<double>(count);
  };
  return out;
}

Cx lambda_k(const Multiplier& mult, const SpectralField& field, int k) {
  if (k < 2 || k > 5) throw DomainError("lambda_k: k must be 2..5");
  if (mult.arity != k)
    throw DomainError("lambda_k: multiplier arity " + std::to_string(mult.arity) +
                      " does not match k=" + std::to_string(k));
  const Grid& g = field.grid;
  const int cut = g.dealias_cut;
  const int width = 2 * cut + 1;
  std::vector<Cx> u(width);
  std::vector<double> xi(width);
  for (int i = 0; i < width; ++i) {
    u[i] = field(i - cut);
    xi[i] = g.xi(i - cut);
  }

  // partial sum per outermost index, lexicographic inner order
  std::vector<Cx> parts(width);
  parallel_for(width, [&](std::size_t first) {
    std::array<int, 5> idx{};
    std::array<double, 5> x{};
    idx[0] = static_cast<int>(first) - cut;
    if (u[first] == Cx(0.0)) {
      parts[first] = 0.0;
      return;
    }
    Cx acc = 0.0;
    auto rec = [&](auto&& self, int level, int partial, Cx prod) -> void {
      if (level == k - 1) {
        const int last = -partial;
        if (last < -cut || last > cut) return;
        const Cx ul = u[last + cut];
        if (ul == Cx(0.0)) return;
        idx[level] = last;
        for (int i = 0; i < k; ++i) x[i] = xi[idx[i] + cut];
        acc += mult.eval(x.data()) * prod * ul;
        return;
      }
      // only indices that can still reach the hyperplane
      const int rem = k - 1 - level;
      const int lo = std::max(-cut, -partial - rem * cut);
      const int hi = std::min(cut, -partial + rem * cut);
      for (int j = lo; j <= hi; ++j) {
        const Cx uj = u[j + cut];
        if (uj == Cx(0.0)) continue;
        idx[level] = j;
        self(self, level + 1, partial + j, prod * uj);
      }
    };
    rec(rec, 1, idx[0], u[first]);
    parts[first] = acc;
  });
  return g.length * tree_sum(parts);
}

// ── M3 / beta3 ──────────────────────────────────────────────────────────

Cx m3(double sigma, const double* xi) {
  require_hyperplane(xi, 3, "m3");
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double m = symbol_m(sigma, xi[j]);
    s += xi[j] * m * m;
  }
  return I * (s / 3.0);
}

Cx m3_symmetrized(double sigma, const double* xi) {
  require_hyperplane(xi, 3, "m3_symmetrized");
  Multiplier raw{3,
                 [sigma](const double* x) {
                   return -I * (symbol_m(sigma, x[0]) * symbol_m(sigma, x[1] + x[2]) *
                                (x[1] + x[2]));
                 },
                 false, "M3_raw"};
  return symmetrize(raw).eval(xi);
}

Cx beta3(const CoshWeight& w, const double* xi, double tol) {
  require_hyperplane(xi, 3, "beta3");
  if (w.sigma_eff == 0.0 || w.scale == 0.0) return 0.0;
  const double s = w.sigma_eff;
  const SeriesResult r =
      series_sum(beta3_pieces(), var_values3(s * xi[0], s * xi[1], s * xi[2]), 2, tol);
  return -(w.scale * s * s / 9.0) * static_cast<double>(r.value);
}

Cx beta3(double sigma, const double* xi, double tol) {
  return beta3(CoshWeight::energy(sigma), xi, tol);
}

Cx beta3_quotient(double sigma, const double* xi) {
  const double p = xi[0] * xi[1] * xi[2];
  if (p == 0.0) throw DomainError("beta3_quotient: a frequency vanishes");
  return -m3(sigma, xi) / (3.0 * I * p);
}

// ── M4 ──────────────────────────────────────────────────────────────────

Cx m4_definition(const CoshWeight& w, const double* xi, double tol) {
  require_hyperplane(xi, 4, "m4_definition");
  std::array<int, 4> p{0, 1, 2, 3};
  Cx acc = 0.0;
  do {
    const double s = xi[p[2]] + xi[p[3]];
    const double t[3] = {xi[p[0]], xi[p[1]], s};
    acc += beta3(w, t, tol) * s;
  } while (std::next_permutation(p.begin(), p.end()));
  return -1.5 * I * acc / 24.0;
}

Cx m4_definition(double sigma, const double* xi, double tol) {
  return m4_definition(CoshWeight::energy(sigma), xi, tol);
}

Cx m4_identity(double sigma, const double* xi, Cx c) {
  require_hyperplane(xi, 4, "m4_identity");
  for (int i = 0; i < 4; ++i)
    if (xi[i] == 0.0) throw DomainError("m4_identity: zero frequency (use m4_definition)");
  using LD = long double;
  auto W = [sigma](LD x) {
    const LD c = std::cosh(static_cast<LD>(sigma) * x);
    return c * c;
  };
  const LD x1 = xi[0], x2 = xi[1], x3 = xi[2], x4 = xi[3];
  const LD alpha = 3.0L * (x1 + x2) * (x1 + x3) * (x1 + x4);
  const LD bracket = W(x1) + W(x2) + W(x3) + W(x4) - W(x1 + x2) - W(x1 + x3) - W(x1 + x4);
  const LD quot = W(x1) / x1 + W(x2) / x2 + W(x3) / x3 + W(x4) / x4;
  const LD first = -alpha / (x1 * x2 * x3 * x4) * bracket / 108.0L;
  const LD second = quot / 36.0L;
  return c * static_cast<double>(first + second);
}

ConstantFit infer_constant_c(const std::vector<double>& sigmas,
                             const std::vector<QuadSample>& tuples, double max_spread) {
  std::vector<Cx> cs;
  for (const QuadSample& q : tuples) {
    const double* x = q.xi;
    const double pairs[3] = {x[0] + x[1], x[0] + x[2], x[0] + x[3]};
    for (int i = 0; i < 4; ++i)
      if (x[i] == 0.0) throw DomainError("infer_constant_c: tuple with a zero component");
    for (double p : pairs)
      if (std::abs(p) < 1e-12) throw DomainError("infer_constant_c: tuple with a zero pair sum");
    for (double s : sigmas) cs.push_back(m4_definition(s, x) / m4_identity(s, x, 1.0));
  }
  if (cs.empty()) throw DomainError("infer_constant_c: no samples");
  const Cx mean = std::accumulate(cs.begin(), cs.end(), Cx(0.0)) / static_cast<double>(cs.size());
  double spread = 0.0;
  for (const Cx& c : cs) spread = std::max(spread, std::abs(c - mean) / std::abs(mean));
  if (!(spread <= max_spread))
    throw IntegrityError("M4 identity constant is not constant: relative spread " +
                         std::to_string(spread));
  return {mean, spread, static_cast<int>(cs.size())};
}

// ── beta4 / M5 ──────────────────────────────────────────────────────────

Cx beta4_series(const CoshWeight& w, const double* xi, double tol) {
  require_hyperplane(xi, 4, "beta4_series");
  if (w.sigma_eff == 0.0 || w.scale == 0.0) return 0.0;
  const double s = w.sigma_eff;
  const SeriesResult r = series_sum(
      beta4_pieces(), var_values(s * xi[0], s * xi[1], s * xi[2], s * xi[3]), 4, tol);
  // beta4 = -M4 / (i sum x^3) = (c / (108 i)) sum_k w_{k+2} (Omega1~ - Omega2~)
  const double s4 = s * s * s * s;
  return kIdentityC / (108.0 * I) * (w.scale * s4 * static_cast<double>(r.value));
}

Cx beta4_series(double sigma, const double* xi, double tol) {
  return beta4_series(CoshWeight::energy(sigma), xi, tol);
}

Cx beta4_quotient(double sigma, const double* xi) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) a += xi[i] * xi[i] * xi[i];
  if (a == 0.0) throw DomainError("beta4_quotient: alpha4 vanishes");
  return -m4_definition(sigma, xi) / (I * a);
}

namespace {
// beta4 is symmetric, so the 120 orderings collapse onto the 10 choices of the
// merged pair {d, e}, each hit 12 times.
template <class Beta>
Cx m5_from(const double* xi, Beta&& beta) {
  Cx acc = 0.0;
  for (int d = 0; d < 5; ++d)
    for (int e = d + 1; e < 5; ++e) {
      double t[4];
      int n = 0;
      for (int i = 0; i < 5; ++i)
        if (i != d && i != e) t[n++] = xi[i];
      const double s = xi[d] + xi[e];
      t[3] = s;
      acc += beta(t) * s;
    }
  return -2.0 * I * acc / 10.0;
}
}  // namespace

Cx m5(const CoshWeight& w, const double* xi, double tol) {
  require_hyperplane(xi, 5, "m5");
  return m5_from(xi, [&](const double* t) { return beta4_series(w, t, tol); });
}

Cx m5(double sigma, const double* xi, double tol) { return m5(CoshWeight::energy(sigma), xi, tol); }

// ── multipliers ─────────────────────────────────────────────────────────

Multiplier energy_weight_multiplier(double sigma) {
  return {2, [sigma](const double* x) { return Cx(symbol_m(sigma, x[0]) * symbol_m(sigma, x[1])); },
          true, "MM"};
}
Multiplier m3_multiplier(double sigma) {
  return {3, [sigma](const double* x) { return m3(sigma, x); }, true, "M3"};
}
Multiplier beta3_multiplier(double sigma) {
  return {3, [sigma](const double* x) { return beta3(sigma, x); }, true, "BETA3"};
}
Multiplier m4_multiplier(double sigma) {
  return {4, [sigma](const double* x) { return m4_definition(sigma, x); }, true, "M4"};
}
Multiplier beta4_multiplier(double sigma) {
  return {4, [sigma](const double* x) { return beta4_series(sigma, x); }, true, "BETA4"};
}

Cx lambda5_m5(const SpectralField& field, double sigma) {
  const Grid& g = field.grid;
  const double dxi = g.dxi();
  const CoshWeight w = CoshWeight::energy(sigma);
  const std::int64_t span = 4 * g.dealias_cut + 1;
  std::unordered_map<std::int64_t, double> cache;
  std::mutex mu;
  // beta4 is real; memoized on the sorted integer indices so every worker
  // evaluates the same canonical ordering.
  auto beta = [&](const double* t) {
    std::array<long, 4> k;
    for (int i = 0; i < 4; ++i) k[i] = std::lround(t[i] / dxi);
    std::sort(k.begin(), k.end());
    std::int64_t key = 0;
    for (long v : k) key = key * span + (v + 2 * g.dealias_cut);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(key);
      if (it != cache.end()) return Cx(it->second);
    }
    const double x[4] = {k[0] * dxi, k[1] * dxi, k[2] * dxi, k[3] * dxi};
    const double v = beta4_series(w, x).real();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return Cx(v);
  };
  Multiplier mult{5, [&](const double* x) { return m5_from(x, beta); }, true, "M5"};
  return lambda_k(mult, field, 5);
}

// ── energies ────────────────────────────────────────────────────────────

EnergyReport energy_report(double sigma, const SpectralField& field, double t, Lambda4Path path) {
  check_precision_budget(sigma, field.grid);
  EnergyReport r;
  r.t = t;
  r.sigma = sigma;
  const Cx e2 = lambda_k(energy_weight_multiplier(sigma), field, 2);
  const Cx l3 = sigma == 0.0 ? Cx(0.0) : lambda_k(beta3_multiplier(sigma), field, 3);
  if (path == Lambda4Path::automatic)
    path = field.grid.n <= 64 ? Lambda4Path::direct : Lambda4Path::fast;
  Cx l4 = 0.0;
  if (sigma != 0.0)
    l4 = path == Lambda4Path::direct ? lambda_k(beta4_multiplier(sigma), field, 4)
                                     : lambda4_fast(field, sigma);
  r.e2 = e2.real();
  r.lambda3_beta3 = l3.real();
  r.lambda4_beta4 = l4.real();
  r.e3 = r.e2 + r.lambda3_beta3;
  r.e4 = r.e3 + r.lambda4_beta4;
  r.imag_residual = std::max({std::abs(e2.imag()), std::abs(l3.imag()), std::abs(l4.imag())});
  if (r.imag_residual > 1e-8 * std::max(std::abs(r.e2), 1.0))
    throw IntegrityError("energy_report: imaginary residual " + std::to_string(r.imag_residual));
  return r;
}

}  // namespace kdvg
