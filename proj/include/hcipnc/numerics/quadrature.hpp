#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hcipnc/error.hpp"
#include "hcipnc/numerics/grid.hpp"

namespace hcipnc {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

namespace detail {

// 4th-order end-corrected composite rule on equally spaced samples
// (trapezoid with 3/8, 7/6, 23/24 end weights). Falls back to Simpson or
// trapezoid for very short spans.
inline double uniform_rule(std::span<const double> F, double h) {
  const std::size_t n = F.size();
  if (n < 2)
    return 0.0;
  if (n == 2)
    return 0.5 * h * (F[0] + F[1]);
  if (n < 7) {
    if (n % 2 == 1) {
      double s = F[0] + F[n - 1];
      for (std::size_t i = 1; i + 1 < n; ++i)
        s += (i % 2 ? 4.0 : 2.0) * F[i];
      return s * h / 3.0;
    }
    // 3/8 rule on the first three intervals, Simpson on the rest.
    double s = 3.0 * h / 8.0 * (F[0] + 3.0 * F[1] + 3.0 * F[2] + F[3]);
    if (n == 6)
      s += h / 3.0 * (F[3] + 4.0 * F[4] + F[5]);
    return s;
  }
  constexpr std::array<double, 3> w{3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  double s = 0.0;
  for (std::size_t i = 3; i + 3 < n; ++i)
    s += F[i];
  for (std::size_t i = 0; i < 3; ++i)
    s += w[i] * (F[i] + F[n - 1 - i]);
  return s * h;
}

inline QuadratureResult uniform_rule_with_error(std::span<const double> F,
                                                double h) {
  const std::size_t n = F.size();
  QuadratureResult out;
  out.value = uniform_rule(F, h);
  if (n < 5) {
    out.abs_error_estimate = std::abs(out.value);
    return out;
  }
  // Same rule at double spacing; the difference overstates the fine error
  // by roughly 2^4 - 1.
  const std::size_t last_even = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  std::vector<double> coarse;
  coarse.reserve(last_even / 2 + 1);
  for (std::size_t i = 0; i <= last_even; i += 2)
    coarse.push_back(F[i]);
  double c = uniform_rule(coarse, 2.0 * h);
  if (last_even != n - 1)
    c += 0.5 * h * (F[n - 2] + F[n - 1]);
  out.abs_error_estimate = std::abs(out.value - c);
  return out;
}

} // namespace detail

/// Integral of a sampled function over [r_first, r_last] (node indices),
/// using the exponential-grid change of variable dr = r dt.
inline QuadratureResult integrate_on_grid(const RadialGrid &grid,
                                          std::span<const double> f,
                                          std::size_t first, std::size_t last) {
  if (f.size() != grid.size())
    throw InputError("integrate_on_grid: sample count != grid size");
  if (last >= grid.size() || first > last)
    throw InputError("integrate_on_grid: bad index range");
  std::vector<double> F(last - first + 1);
  for (std::size_t i = first; i <= last; ++i)
    F[i - first] = f[i] * grid[i];
  return detail::uniform_rule_with_error(F, grid.log_step());
}

inline QuadratureResult integrate_on_grid(const RadialGrid &grid,
                                          std::span<const double> f) {
  return integrate_on_grid(grid, f, 0, grid.size() - 1);
}

/// Contribution of [0, r_min] assuming f ~ r^p there, p fitted from the
/// first two nodes. Zero when the samples do not look like a power law.
inline double origin_tail(const RadialGrid &grid, std::span<const double> f) {
  if (f.size() < 2 || f[0] == 0.0 || f[1] == 0.0 || (f[0] > 0) != (f[1] > 0))
    return 0.0;
  const double p = std::log(f[1] / f[0]) / grid.log_step();
  if (!(p > -1.0))
    return 0.0;
  return f[0] * grid[0] / (p + 1.0);
}

/// Integral of a sampled function from the origin to r_upper, which may lie
/// between nodes: the last partial interval is done with a cubic interpolant
/// in ln r and 4-point Gauss-Legendre.
inline QuadratureResult integrate_on_grid_to(const RadialGrid &grid,
                                             std::span<const double> f,
                                             double r_upper) {
  if (f.size() != grid.size())
    throw InputError("integrate_on_grid_to: sample count != grid size");
  if (!(r_upper > grid.r_min()) || r_upper > grid.r_max())
    throw InputError("integrate_on_grid_to: upper limit outside the grid");
  const std::size_t node = grid.find_node(r_upper);
  const std::size_t k = node < grid.size() ? node : grid.index_below(r_upper);
  QuadratureResult out = k > 0 ? integrate_on_grid(grid, f, 0, k)
                               : QuadratureResult{};
  out.value += origin_tail(grid, f);
  if (node < grid.size())
    return out;

  const double h = grid.log_step();
  const std::size_t j0 = k == 0 ? 0 : std::min(k - 1, grid.size() - 4);
  std::array<double, 4> tj{}, Fj{};
  for (std::size_t j = 0; j < 4; ++j) {
    tj[j] = double(j0 + j) * h;
    Fj[j] = f[j0 + j] * grid[j0 + j];
  }
  auto interp = [&](double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      double l = 1.0;
      for (std::size_t m = 0; m < 4; ++m)
        if (m != j)
          l *= (t - tj[m]) / (tj[j] - tj[m]);
      s += l * Fj[j];
    }
    return s;
  };
  const double ta = double(k) * h;
  const double tb = ta + std::log(r_upper / grid[k]);
  constexpr std::array<double, 4> x{-0.8611363115940526, -0.3399810435848563,
                                    0.3399810435848563, 0.8611363115940526};
  constexpr std::array<double, 4> w{0.3478548451374538, 0.6521451548625461,
                                    0.6521451548625461, 0.3478548451374538};
  double part = 0.0;
  for (std::size_t q = 0; q < 4; ++q)
    part += w[q] * interp(0.5 * (ta + tb) + 0.5 * (tb - ta) * x[q]);
  out.value += 0.5 * (tb - ta) * part;
  return out;
}

//******************************************************************************
//! Adaptive Gauss-Kronrod (7/15) on [a, b].
/*! Meets |error| <= rtol |value| + atol or throws ConvergenceError carrying
    the best estimate.
*/
inline QuadratureResult integrate_adaptive(const std::function<double(double)> &f,
                                           double a, double b,
                                           double rtol = 1e-10,
                                           double atol = 0.0,
                                           unsigned max_depth = 20) {
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rtol, &err, &l1);
  if (!std::isfinite(v))
    throw NumericError("integrate_adaptive: non-finite integrand");
  if (err > rtol * std::abs(v) + atol &&
      err > 10.0 * std::numeric_limits<double>::epsilon() * l1)
    throw ConvergenceError("integrate_adaptive: tolerance not reached", v, err);
  return {v, err};
}

} // namespace hcipnc
