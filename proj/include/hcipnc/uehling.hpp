#pragma once

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/numerics/grid.hpp"
#include "hcipnc/numerics/quadrature.hpp"

namespace hcipnc {

/// Which nuclear charge the vacuum-polarisation loop is attached to.
enum class UehlingSource {
  point,         // Z/r source: the classic closed kernel
  uniform_sphere // same kernel folded with the uniformly charged nucleus
};

inline UehlingSource parse_uehling_source(std::string_view s) {
  if (s == "point")
    return UehlingSource::point;
  if (s == "uniform" || s == "uniform_sphere" || s == "extended")
    return UehlingSource::uniform_sphere;
  throw InputError("unknown Uehling source '" + std::string(s) + "'");
}

// exponent beyond which e^{-2x} is below the smallest normal double
inline constexpr double kUehlingUnderflow = 708.0;

namespace detail {

// e^{-z} (z cosh z - sinh z), no cancellation for small z
inline double damped_xcosh_minus_sinh(double z) {
  if (z < 0.5) {
    // sum_k 2k z^(2k+1) / (2k+1)!
    double term = z * z * z / 6.0; // z^3/3!
    double s = 0.0;
    for (int k = 1; k <= 10; ++k) {
      s += 2.0 * k * term;
      term *= z * z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return std::exp(-z) * s;
  }
  return 0.5 * ((z - 1.0) + (z + 1.0) * std::exp(-2.0 * z));
}

} // namespace detail

//******************************************************************************
//! Uehling potential energy (eV) of the electron at r (fm), point source:
/*! V_U(r) = -(2 alpha / 3 pi) (Z alpha hbar c / r)
             int_1^inf e^{-2 r y / lambda_C} (1 + 1/2y^2) sqrt(y^2-1)/y^2 dy
    Attractive, like the Coulomb term. Evaluated with y = cosh u, which
    turns the measure into tanh^2 u du.
*/
inline double uehling_point(int Z, double r_fm, const ConstantsSet &c = {}) {
  if (!(r_fm > 0.0))
    throw InputError("uehling_point: r must be positive");
  const double x = r_fm / c.compton_fm();
  if (2.0 * x > kUehlingUnderflow)
    return 0.0;
  // e^{-2x cosh u} = e^{-2x} e^{-4x sinh^2(u/2)}; the first factor is pulled out
  const auto integrand = [x](double u) {
    const double sh = std::sinh(0.5 * u);
    const double ch = std::cosh(u);
    const double th = std::tanh(u);
    return std::exp(-4.0 * x * sh * sh) * (1.0 + 0.5 / (ch * ch)) * th * th;
  };
  // integrand below 1e-18 of its scale past 2x (cosh u - 1) = 41.5
  const double u_max = std::acosh(1.0 + 41.5 / (2.0 * x));
  const double I = integrate_adaptive(integrand, 0.0, u_max, 1e-10, 0.0, 15).value;
  return -2.0 * c.alpha / (3.0 * std::numbers::pi) * Z * c.alpha *
         c.hbar_c_eV_fm / r_fm * std::exp(-2.0 * x) * I;
}

//******************************************************************************
//! Uehling potential (eV) of a uniformly charged sphere of radius R (fm).
/*! V(r) = -(2 alpha^2 Z / 3 r) int_0^R dr' r' rho(r')
             [K0(2|r - r'|) - K0(2(r + r'))]  (natural units),
    K0(z) = int_1^inf e^{-z t} (1/t^3 + 1/2t^5) sqrt(t^2 - 1) dt.
    The r' integral of the exponentials is done in closed form, leaving one
    t integral. Reduces to uehling_point as R -> 0.
*/
inline double uehling_uniform(int Z, double R_fm, double r_fm,
                              const ConstantsSet &c = {}) {
  if (!(r_fm > 0.0))
    throw InputError("uehling_uniform: r must be positive");
  if (!(R_fm > 0.0))
    throw InputError("uehling_uniform: R must be positive");
  const double lc = c.compton_fm();
  const double x = r_fm / lc;
  const double X = R_fm / lc;
  if (2.0 * (x - X) > kUehlingUnderflow)
    return 0.0;

  // J(t) = int_0^X x' (e^{-b|x-x'|} - e^{-b(x+x')}) dx', b = 2t. Outside
  // the nucleus the factor e^{-2(x-X)} is taken out of the integral.
  const auto J = [x, X](double t) {
    const double b = 2.0 * t;
    const double b2 = b * b;
    if (x >= X)
      return 2.0 / b2 * std::exp(-2.0 * (t - 1.0) * (x - X)) *
             detail::damped_xcosh_minus_sinh(b * X);
    const double z = b * x;
    const double d = b * (X - x);
    const double inner = 2.0 / b2 * detail::damped_xcosh_minus_sinh(z);
    const double outer = -std::expm1(-2.0 * z) / b2 *
                         ((z + 1.0) * -std::expm1(-d) - d * std::exp(-d));
    return inner + outer;
  };
  const auto integrand = [&J](double u) {
    const double t = std::cosh(u);
    const double sh = std::sinh(u);
    const double t2 = t * t;
    const double w = (1.0 / (t2 * t) + 0.5 / (t2 * t2 * t)) * sh * sh;
    return w * J(t);
  };
  double u_max = 20.0;
  if (x > X)
    u_max = std::min(u_max, std::acosh(1.0 + 41.5 / (2.0 * (x - X))));
  const double I = integrate_adaptive(integrand, 0.0, u_max, 1e-10, 0.0, 15).value;
  const double rho0 = 3.0 / (4.0 * std::numbers::pi * X * X * X);
  const double outside = x > X ? std::exp(-2.0 * (x - X)) : 1.0;
  return -2.0 * c.alpha * c.alpha * Z / (3.0 * x) * rho0 * I * outside *
         c.electron_mass_eV;
}

/// Uehling potential for a nucleus with the chosen source model. A point
/// nucleus always uses the point kernel.
inline double uehling_potential(const NuclearModel &nuc, double r_fm,
                                const ConstantsSet &c = {},
                                UehlingSource src = UehlingSource::uniform_sphere) {
  if (src == UehlingSource::point || nuc.is_point())
    return uehling_point(nuc.Z(), r_fm, c);
  return uehling_uniform(nuc.Z(), nuc.radius_fm(), r_fm, c);
}

struct UehlingTable {
  RadialGrid grid;
  std::vector<double> values; // eV
  int Z = 0;
};

/// Point-source Uehling potential on every grid node.
inline UehlingTable uehling_on_grid(int Z, const RadialGrid &grid,
                                    const ConstantsSet &c = {}) {
  UehlingTable t{grid, std::vector<double>(grid.size()), Z};
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.values[i] = uehling_point(Z, grid[i], c);
  return t;
}

inline UehlingTable uehling_on_grid(const NuclearModel &nuc,
                                    const RadialGrid &grid,
                                    const ConstantsSet &c, UehlingSource src) {
  UehlingTable t{grid, std::vector<double>(grid.size()), nuc.Z()};
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.values[i] = uehling_potential(nuc, grid[i], c, src);
  return t;
}

/// Uehling potential sampled for direct insertion into the Dirac equation.
inline ExtraPotential uehling_extra_potential(const NuclearModel &nuc,
                                              const RadialGrid &grid,
                                              const ConstantsSet &c,
                                              UehlingSource src) {
  return sample_potential(
      grid, [&](double r) { return uehling_potential(nuc, r, c, src); });
}

} // namespace hcipnc
