#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hcipnc/constants.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/numerics/grid.hpp"
#include "hcipnc/numerics/quadrature.hpp"

namespace hcipnc {

//******************************************************************************
//! Potential energy (eV) added to the nuclear Coulomb term, sampled at the
//! grid nodes and at the ln r midpoints the RK4 stepper needs.
struct ExtraPotential {
  std::vector<double> nodes;
  std::vector<double> midpoints;

  bool empty() const { return nodes.empty(); }
};

inline ExtraPotential sample_potential(const RadialGrid &grid,
                                       const std::function<double(double)> &v) {
  ExtraPotential p;
  p.nodes.resize(grid.size());
  p.midpoints.resize(grid.size() - 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    p.nodes[i] = v(grid[i]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    p.midpoints[i] = v(grid.midpoint(i));
  return p;
}

inline ExtraPotential operator*(double s, ExtraPotential p) {
  for (auto &x : p.nodes)
    x *= s;
  for (auto &x : p.midpoints)
    x *= s;
  return p;
}

//******************************************************************************
//! Bound-state solution of the radial Dirac equation.
/*! psi = (1/r) (g Omega_kappa, i f Omega_-kappa), normalised so that
    int (g^2 + f^2) dr = 1 (dr in fm, so g and f carry fm^-1/2).
*/
struct DiracState {
  int n = 0;
  int kappa = 0;
  double energy_eV = 0.0;  // total, including m c^2
  double binding_eV = 0.0; // energy_eV - m c^2, kept separately for precision
  std::vector<double> g;
  std::vector<double> f;
  RadialGrid grid;
  std::size_t match_index = 0;

  int l() const { return kappa > 0 ? kappa : -kappa - 1; }
  int expected_nodes() const { return n - l() - 1; }
};

inline int count_nodes(std::span<const double> g) {
  const double gmax = std::abs(*std::max_element(
      g.begin(), g.end(),
      [](double a, double b) { return std::abs(a) < std::abs(b); }));
  int nodes = 0;
  double last = 0.0;
  for (const double x : g) {
    if (std::abs(x) < 1e-12 * gmax)
      continue;
    if (last != 0.0 && (x > 0.0) != (last > 0.0))
      ++nodes;
    last = x;
  }
  return nodes;
}

inline void validate_quantum_numbers(int n, int kappa) {
  if (n < 1)
    throw InputError("n must be >= 1");
  if (kappa == 0 || std::abs(kappa) > n || kappa == n)
    throw InputError("invalid kappa " + std::to_string(kappa) + " for n = " +
                     std::to_string(n));
}

//******************************************************************************
//! Dirac-Coulomb point-nucleus binding energy E - m (eV), negative.
inline double sommerfeld_binding(int Z, int n, int kappa,
                                 const ConstantsSet &c = {}) {
  validate_quantum_numbers(n, kappa);
  const double az = c.alpha * Z;
  if (!(az < std::abs(kappa)) || az >= 1.0)
    throw InputError("sommerfeld_energy: alpha Z >= 1");
  const double gamma = std::sqrt(double(kappa) * kappa - az * az);
  const double x = az / (n - std::abs(kappa) + gamma);
  const double s = std::sqrt(1.0 + x * x);
  // m (1/s - 1) without the cancellation
  return -c.electron_mass_eV * x * x / (s * (1.0 + s));
}

inline double sommerfeld_energy(int Z, int n, int kappa,
                                const ConstantsSet &c = {}) {
  return c.electron_mass_eV + sommerfeld_binding(Z, n, kappa, c);
}

struct SolverOptions {
  /// Converged when the energy correction is below this fraction of the
  /// binding energy.
  double binding_rtol = 1e-13;
  int max_iterations = 300;
  /// |g|, |f| at r_max relative to their maxima.
  double boundary_threshold = 1e-12;
};

namespace detail {

class DiracShooter {
public:
  DiracShooter(const NuclearModel &nuc, const RadialGrid &grid, int kappa,
               const ConstantsSet &c, const ExtraPotential &extra)
      : nuc_(nuc), grid_(grid), kappa_(kappa), m_(c.electron_mass_eV),
        hc_(c.hbar_c_eV_fm) {
    const std::size_t n = grid.size();
    if (!extra.empty() &&
        (extra.nodes.size() != n || extra.midpoints.size() != n - 1))
      throw InputError("extra potential not sampled on this grid");
    if (!nuc.is_point() && !(grid.r_min() < nuc.radius_fm()))
      throw InputError("grid must start inside the nucleus");
    v_.resize(n);
    vmid_.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      v_[i] = coulomb_potential(nuc, grid[i], c) +
              (extra.empty() ? 0.0 : extra.nodes[i]);
    for (std::size_t i = 0; i + 1 < n; ++i)
      vmid_[i] = coulomb_potential(nuc, grid.midpoint(i), c) +
                 (extra.empty() ? 0.0 : extra.midpoints[i]);

    // r V / hc near the origin as a short power series, extra potential
    // taken as constant over the first node.
    const double za = nuc.Z() * c.alpha;
    const double v_extra0 = extra.empty() ? 0.0 : extra.nodes[0];
    if (nuc.is_point()) {
      u_ = {-za, v_extra0 / hc_, 0.0, 0.0};
    } else {
      const double R = nuc.radius_fm();
      u_ = {0.0, -1.5 * za / R + v_extra0 / hc_, 0.0, 0.5 * za / (R * R * R)};
    }
    const double k2 = double(kappa) * kappa;
    s_ = std::sqrt(k2 - u_[0] * u_[0]);
  }

  struct Shot {
    std::vector<double> g, f;
    std::size_t match = 0;
    std::size_t last = 0; // last nonzero node
    double dE = 0.0;      // energy correction, eV
    double norm = 0.0;
    int nodes = 0;
  };

  const std::vector<double> &potential() const { return v_; }

  /// w = E - m
  Shot shoot(double w) const {
    const std::size_t n = grid_.size();
    const double h = grid_.log_step();
    Shot s;
    s.g.assign(n, 0.0);
    s.f.assign(n, 0.0);

    // outer classical turning point
    std::size_t im = 0;
    for (std::size_t i = n; i-- > 0;)
      if (w - v_[i] > 0.0) {
        im = i;
        break;
      }
    im = std::clamp<std::size_t>(im, 8, n - 9);
    s.match = im;

    // practical infinity
    std::size_t last = n - 1;
    for (std::size_t i = im + 1; i < n; ++i) {
      const double lam = local_decay(w, v_[i]);
      if (lam * (grid_[i] - grid_[im]) > 85.0) {
        last = i;
        break;
      }
    }
    s.last = last;

    // outward
    series_start(w, s.g[0], s.f[0]);
    double g = s.g[0], f = s.f[0];
    for (std::size_t i = 0; i < im; ++i) {
      rk4(w, grid_[i], grid_.midpoint(i), grid_[i + 1], v_[i], vmid_[i],
          v_[i + 1], h, g, f);
      s.g[i + 1] = g;
      s.f[i + 1] = f;
    }
    const double g_out = g, f_out = f;

    // inward
    {
      const double r = grid_[last];
      const double lam = local_decay(w, v_[last]);
      g = 1.0;
      f = (kappa_ / r - lam) * hc_ / (2.0 * m_ + w - v_[last]) * g;
      s.g[last] = g;
      s.f[last] = f;
      for (std::size_t i = last; i > im; --i) {
        rk4(w, grid_[i], grid_.midpoint(i - 1), grid_[i - 1], v_[i],
            vmid_[i - 1], v_[i - 1], -h, g, f);
        s.g[i - 1] = g;
        s.f[i - 1] = f;
      }
    }
    const double scale = g_out / s.g[im];
    for (std::size_t i = im; i <= last; ++i) {
      s.g[i] *= scale;
      s.f[i] *= scale;
    }
    const double f_in = s.f[im];
    s.f[im] = f_out;

    std::vector<double> rho2(n);
    for (std::size_t i = 0; i < n; ++i)
      rho2[i] = s.g[i] * s.g[i] + s.f[i] * s.f[i];
    s.norm = integrate_on_grid(grid_, rho2).value + origin_tail(grid_, rho2);
    s.dE = hc_ * g_out * (f_out - f_in) / s.norm;
    s.nodes = count_nodes(std::span<const double>(s.g).first(last + 1));
    return s;
  }

private:
  double local_decay(double w, double v) const {
    const double a = -(w - v) * (2.0 * m_ + w - v);
    return a > 0.0 ? std::sqrt(a) / hc_ : 0.0;
  }

  // Frobenius series about the origin with r V/hc = sum_j u_j r^j.
  void series_start(double w, double &g0, double &f0) const {
    constexpr int K = 10;
    const double P = (2.0 * m_ + w) / hc_;
    const double Q = w / hc_;
    const double kap = kappa_;
    std::array<double, K + 1> a{}, b{};
    if (u_[0] != 0.0) {
      a[0] = 1.0;
      b[0] = -(s_ + kap) / u_[0];
    } else if (kappa_ < 0) {
      a[0] = 1.0;
    } else {
      b[0] = 1.0;
    }
    for (int k = 1; k <= K; ++k) {
      double ra = P * b[k - 1];
      double rb = -Q * a[k - 1];
      for (int j = 1; j <= 3 && j <= k; ++j) {
        ra -= u_[j] * b[k - j];
        rb += u_[j] * a[k - j];
      }
      const double m11 = s_ + k + kap, m12 = u_[0];
      const double m21 = -u_[0], m22 = s_ + k - kap;
      const double det = m11 * m22 - m12 * m21;
      a[k] = (ra * m22 - m12 * rb) / det;
      b[k] = (m11 * rb - m21 * ra) / det;
    }
    const double r = grid_[0];
    double gs = 0.0, fs = 0.0, rk = 1.0;
    for (int k = 0; k <= K; ++k) {
      gs += a[k] * rk;
      fs += b[k] * rk;
      rk *= r;
    }
    const double rs = std::pow(r, s_);
    g0 = rs * gs;
    f0 = rs * fs;
  }

  // One RK4 step in t = ln r; h < 0 steps inward.
  void rk4(double w, double r0, double rm, double r1, double v0, double vm,
           double v1, double h, double &g, double &f) const {
    const double kap = kappa_;
    auto deriv = [&](double r, double v, double gg, double ff, double &dg,
                     double &df) {
      dg = -kap * gg + r * (2.0 * m_ + w - v) / hc_ * ff;
      df = kap * ff - r * (w - v) / hc_ * gg;
    };
    double k1g, k1f, k2g, k2f, k3g, k3f, k4g, k4f;
    deriv(r0, v0, g, f, k1g, k1f);
    deriv(rm, vm, g + 0.5 * h * k1g, f + 0.5 * h * k1f, k2g, k2f);
    deriv(rm, vm, g + 0.5 * h * k2g, f + 0.5 * h * k2f, k3g, k3f);
    deriv(r1, v1, g + h * k3g, f + h * k3f, k4g, k4f);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
  }

  const NuclearModel &nuc_;
  const RadialGrid &grid_;
  int kappa_;
  double m_, hc_;
  std::vector<double> v_, vmid_;
  std::array<double, 4> u_{};
  double s_ = 1.0;
};

} // namespace detail

//******************************************************************************
//! Solve for the (n, kappa) bound state in the nuclear potential plus an
//! optional extra potential.
/*! Outward series start, inward exponential start, matching at the outer
    classical turning point. The energy is corrected with the first-order
    formula dE = hc g (f_out - f_in) / <psi|psi>; node counting keeps a
    bracket and forces bisection when the node count is wrong.
*/
inline DiracState solve_bound_state(const NuclearModel &nuc,
                                    const RadialGrid &grid, int n, int kappa,
                                    const ConstantsSet &c = {},
                                    const ExtraPotential &extra = {},
                                    const SolverOptions &opt = {}) {
  validate_quantum_numbers(n, kappa);
  if (!(nuc.Z() * c.alpha < 1.0))
    throw InputError("solve_bound_state: alpha Z >= 1");
  const detail::DiracShooter shooter(nuc, grid, kappa, c, extra);
  const double m = c.electron_mass_eV;
  const int target = n - (kappa > 0 ? kappa : -kappa - 1) - 1;

  // Energy window (-m, m) relative to the potential at infinity.
  const double v_inf = shooter.potential().back();
  double lo = -2.0 * m + v_inf, hi = v_inf;
  double w = sommerfeld_binding(nuc.Z(), n, kappa, c) + v_inf;
  detail::DiracShooter::Shot shot;
  bool converged = false;
  for (int it = 0; it < opt.max_iterations; ++it) {
    shot = shooter.shoot(w);
    if (shot.nodes > target) {
      hi = w;
      w = 0.5 * (lo + hi);
      continue;
    }
    if (shot.nodes < target) {
      lo = w;
      w = 0.5 * (lo + hi);
      continue;
    }
    if (std::abs(shot.dE) <= opt.binding_rtol * std::abs(w - v_inf)) {
      converged = true;
      break;
    }
    if (shot.dE > 0.0)
      lo = std::max(lo, w);
    else
      hi = std::min(hi, w);
    double next = w + shot.dE;
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    if (next == w) {
      converged = true;
      break;
    }
    w = next;
  }
  if (!converged) {
    if (shot.nodes != target)
      throw NumericError("solve_bound_state: no eigenvalue with " +
                         std::to_string(target) + " nodes found for n=" +
                         std::to_string(n) + " kappa=" + std::to_string(kappa));
    if (std::abs(shot.dE) > 1e-9 * std::abs(w - v_inf))
      throw ConvergenceError("solve_bound_state: eigenvalue did not converge",
                             m + w, std::abs(shot.dE));
  }

  DiracState st;
  st.n = n;
  st.kappa = kappa;
  st.binding_eV = w;
  st.energy_eV = m + w;
  st.grid = grid;
  st.match_index = shot.match;
  const double inv = 1.0 / std::sqrt(shot.norm);
  st.g = std::move(shot.g);
  st.f = std::move(shot.f);
  for (auto &x : st.g)
    x *= inv;
  for (auto &x : st.f)
    x *= inv;

  if (shot.last == grid.size() - 1) {
    double gmax = 0.0, fmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      gmax = std::max(gmax, std::abs(st.g[i]));
      fmax = std::max(fmax, std::abs(st.f[i]));
    }
    if (std::abs(st.g.back()) > opt.boundary_threshold * gmax ||
        std::abs(st.f.back()) > opt.boundary_threshold * fmax)
      throw NumericError(
          "solve_bound_state: wave function not negligible at r_max = " +
          std::to_string(grid.r_max()) + " fm; use a larger r_max");
  }
  return st;
}

//******************************************************************************
// Diagnostics

/// int (g^2 + f^2) dr
inline double norm(const DiracState &s) {
  std::vector<double> d(s.g.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = s.g[i] * s.g[i] + s.f[i] * s.f[i];
  return integrate_on_grid(s.grid, d).value + origin_tail(s.grid, d);
}

/// int (g_a g_b + f_a f_b) dr
inline double overlap(const DiracState &a, const DiracState &b) {
  if (!a.grid.same_as(b.grid))
    throw InputError("overlap: states on different grids");
  std::vector<double> d(a.g.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = a.g[i] * b.g[i] + a.f[i] * b.f[i];
  return integrate_on_grid(a.grid, d).value + origin_tail(a.grid, d);
}

namespace detail {
// d/dr of samples on an exponential grid, 5-point differences in ln r.
inline std::vector<double> grid_derivative(const RadialGrid &grid,
                                           std::span<const double> y) {
  const std::size_t n = y.size();
  const double h = grid.log_step();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dt;
    if (i >= 2 && i + 2 < n)
      dt = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    else if (i < 2)
      dt = (-25.0 * y[i] + 48.0 * y[i + 1] - 36.0 * y[i + 2] +
            16.0 * y[i + 3] - 3.0 * y[i + 4]) /
           (12.0 * h);
    else
      dt = (25.0 * y[i] - 48.0 * y[i - 1] + 36.0 * y[i - 2] -
            16.0 * y[i - 3] + 3.0 * y[i - 4]) /
           (12.0 * h);
    d[i] = dt / grid[i];
  }
  return d;
}
} // namespace detail

struct EnergyExpectation {
  double potential_eV = 0.0;
  double kinetic_eV = 0.0; // includes the rest-mass term m (g^2 - f^2)
  double total() const { return potential_eV + kinetic_eV; }
};

/// <V> and <T> of a normalised state, with T = the free Dirac operator
/// applied to (g, f) by finite differences on the grid.
inline EnergyExpectation energy_expectation(const DiracState &s,
                                            const NuclearModel &nuc,
                                            const ConstantsSet &c = {},
                                            const ExtraPotential &extra = {}) {
  const auto &grid = s.grid;
  const std::size_t n = grid.size();
  const double hc = c.hbar_c_eV_fm, m = c.electron_mass_eV;
  const auto dg = detail::grid_derivative(grid, s.g);
  const auto df = detail::grid_derivative(grid, s.f);
  std::vector<double> tv(n), vv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[i];
    const double V = coulomb_potential(nuc, r, c) +
                     (extra.empty() ? 0.0 : extra.nodes[i]);
    tv[i] = hc * (s.g[i] * (-df[i] + s.kappa * s.f[i] / r) +
                  s.f[i] * (dg[i] + s.kappa * s.g[i] / r)) +
            m * (s.g[i] * s.g[i] - s.f[i] * s.f[i]);
    vv[i] = V * (s.g[i] * s.g[i] + s.f[i] * s.f[i]);
  }
  return {integrate_on_grid(grid, vv).value + origin_tail(grid, vv),
          integrate_on_grid(grid, tv).value + origin_tail(grid, tv)};
}

} // namespace hcipnc
