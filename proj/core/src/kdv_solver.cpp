#include "kdvg/kdv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"
#include "kdvg/error.hpp"

namespace kdvg {
namespace {

// Half-spectrum state (k = 0..n/2) plus scratch for the pseudo-spectral product.
class Stepper {
 public:
  explicit Stepper(const Grid& g) : g_(g), half_(g.n / 2 + 1), phys_(g.n), ik_(half_) {
    for (int k = 0; k < half_; ++k) ik_[k] = k <= g.dealias_cut ? Cx(0.0, -0.5 * g.xi(k)) : 0.0;
    tmp_.resize(half_);
  }

  // out = -(i xi/2) (u^2)^ on |k| <= cut
  void nonlinear(const std::vector<Cx>& u, std::vector<Cx>& out) {
    detail::c2r(g_.n, u.data(), phys_.data());
    for (double& v : phys_) v *= v;
    detail::r2c(g_.n, phys_.data(), tmp_.data());
    const double inv_n = 1.0 / g_.n;
    out.assign(half_, 0.0);
    for (int k = 1; k <= g_.dealias_cut; ++k) out[k] = ik_[k] * tmp_[k] * inv_n;
  }

  void set_dt(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    e1_.assign(half_, 0.0);
    e2_.assign(half_, 0.0);
    for (int k = 0; k <= g_.dealias_cut; ++k) {
      const double xi = g_.xi(k);
      const double ph = xi * xi * xi * dt;
      e1_[k] = std::polar(1.0, 0.5 * ph);
      e2_[k] = std::polar(1.0, ph);
    }
  }

  void step(std::vector<Cx>& u, bool nonlinear_on) {
    if (!nonlinear_on) {
      for (int k = 0; k < half_; ++k) u[k] *= e2_[k];
      return;
    }
    std::vector<Cx>& a = a_;
    std::vector<Cx>& b = b_;
    std::vector<Cx>& c = c_;
    std::vector<Cx>& d = d_;
    std::vector<Cx>& w = w_;
    w.resize(half_);
    const double h = dt_;
    nonlinear(u, a);
    for (int k = 0; k < half_; ++k) w[k] = e1_[k] * (u[k] + 0.5 * h * a[k]);
    nonlinear(w, b);
    for (int k = 0; k < half_; ++k) w[k] = e1_[k] * u[k] + 0.5 * h * b[k];
    nonlinear(w, c);
    for (int k = 0; k < half_; ++k) w[k] = e2_[k] * u[k] + h * e1_[k] * c[k];
    nonlinear(w, d);
    for (int k = 0; k < half_; ++k)
      u[k] = e2_[k] * u[k] + (h / 6.0) * (e2_[k] * a[k] + 2.0 * e1_[k] * (b[k] + c[k]) + d[k]);
  }

  std::vector<Cx> load(const SpectralField& f) const {
    std::vector<Cx> u(half_);
    for (int k = 0; k < half_; ++k) u[k] = k <= g_.dealias_cut ? f(k) : 0.0;
    u[0] = 0.0;
    return u;
  }

  SpectralField store(const std::vector<Cx>& u) const {
    SpectralField f(g_);
    for (int k = 1; k <= g_.dealias_cut; ++k) {
      f(k) = u[k];
      f(-k) = std::conj(u[k]);
    }
    return f;
  }

 private:
  Grid g_;
  int half_;
  std::vector<double> phys_;
  std::vector<Cx> ik_, tmp_, e1_, e2_, a_, b_, c_, d_, w_;
  double dt_ = std::numeric_limits<double>::quiet_NaN();
};

bool all_finite(const std::vector<Cx>& u) {
  for (const Cx& c : u)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double max_abs(const std::vector<Cx>& u) {
  double m = 0.0;
  for (const Cx& c : u) m = std::max(m, std::abs(c));
  return m;
}

// Periodic distance to the origin in [-L/2, L/2).
double wrap(double d, double L) {
  d = std::fmod(d + 0.5 * L, L);
  if (d < 0) d += L;
  return d - 0.5 * L;
}

std::vector<double> soliton_raw(double kappa, double x0, double shift, const Grid& g) {
  std::vector<double> u(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double s = 1.0 / std::cosh(kappa * wrap(g.x(j) - x0 - shift, g.length));
    u[j] = 12.0 * kappa * kappa * s * s;
  }
  return u;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

void check_soliton(double kappa, const Grid& g) {
  if (!(kappa > 0.0)) throw ConfigError("soliton: kappa must be positive");
  const double tail = std::pow(1.0 / std::cosh(0.5 * kappa * g.length), 2);
  if (tail > 1e-12)
    throw ConfigError("soliton: profile wraps the period (sech^2(kappa L/2) = " +
                      std::to_string(tail) + " > 1e-12)");
}

}  // namespace

SpectralField rhs_nonlinear(const SpectralField& field) {
  Stepper s(field.grid);
  std::vector<Cx> out;
  s.nonlinear(s.load(field), out);
  return s.store(out);
}

SpectralField step(const SpectralField& field, double dt, bool nonlinear) {
  Stepper s(field.grid);
  s.set_dt(dt);
  std::vector<Cx> u = s.load(field);
  const double before = max_abs(u);
  s.step(u, nonlinear);
  if (!all_finite(u)) throw BlowUpError(dt, before);
  return s.store(u);
}

double max_stable_dt(const SpectralField& field, double c_cfl) {
  const auto u = inverse_transform(field);
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  const double xm = field.grid.xi_max();
  if (umax == 0.0 || xm == 0.0) return std::numeric_limits<double>::infinity();
  return c_cfl / (xm * umax);
}

Trajectory evolve(const SpectralField& u0, const SolverConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("solver: dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw ConfigError("solver: t_end must be nonnegative");
  if (cfg.t_end > 0.0 && !(cfg.checkpoint_every >= cfg.dt))
    throw ConfigError("solver: checkpoint_every must be >= dt");

  Trajectory tr;
  const double norm0 = l2_norm(u0);
  Stepper s(u0.grid);
  std::vector<Cx> u = s.load(u0);
  tr.checkpoints.push_back({0.0, s.store(u)});
  if (cfg.t_end == 0.0) return tr;

  const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  const double h = cfg.t_end / nsteps;
  if (h > max_stable_dt(u0, cfg.c_cfl) * (1.0 + 1e-12))
    throw ConfigError("solver: dt=" + std::to_string(h) + " exceeds the advective budget " +
                      std::to_string(max_stable_dt(u0, cfg.c_cfl)));
  const long every = std::max<long>(1, std::lround(cfg.checkpoint_every / h));
  s.set_dt(h);

  for (long i = 1; i <= nsteps; ++i) {
    const double before = max_abs(u);
    s.step(u, cfg.nonlinear);
    if (!all_finite(u)) throw BlowUpError(i * h, before);
    if (i % every == 0 || i == nsteps) {
      SpectralField f = s.store(u);
      if (norm0 > 0.0) tr.l2_drift = std::max(tr.l2_drift, std::abs(l2_norm(f) - norm0) / norm0);
      tr.checkpoints.push_back({i == nsteps ? cfg.t_end : i * h, std::move(f)});
    }
  }
  return tr;
}

SpectralField soliton(double kappa, double x0, const Grid& grid) {
  check_soliton(kappa, grid);
  return forward_transform(soliton_raw(kappa, x0, 0.0, grid), grid);
}

double soliton_speed(double kappa, double x0, const Grid& grid) {
  check_soliton(kappa, grid);
  return 4.0 * kappa * kappa - mean(soliton_raw(kappa, x0, 0.0, grid));
}

std::vector<double> soliton_profile(double kappa, double x0, double t, const Grid& grid) {
  const double c = soliton_speed(kappa, x0, grid);
  auto u = soliton_raw(kappa, x0, c * t, grid);
  const double m = mean(soliton_raw(kappa, x0, 0.0, grid));
  for (double& v : u) v -= m;
  return u;
}

SpectralField gevrey_random_data(double sigma0, double amplitude, std::uint64_t seed,
                                 const Grid& grid) {
  if (!(sigma0 > 0.0)) throw ConfigError("gevrey_random_data: sigma0 must be positive");
  std::uint64_t state = seed;
  auto next = [&state]() {  // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  SpectralField f(grid);
  for (int k = 1; k <= grid.dealias_cut; ++k) {
    const double theta = kTwoPi * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    f(k) = std::polar(amplitude * std::exp(-sigma0 * grid.xi(k)), theta);
    f(-k) = std::conj(f(k));
  }
  return f;
}

}  // namespace kdvg
