#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "hcipnc/constants.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/numerics/quadrature.hpp"

namespace hcipnc {

/// Tree-level weak charge Q_W = -N + Z (1 - 4 s^2). N may be non-integer
/// when it is taken from an atomic weight.
inline double weak_charge(int Z, double N, double s2) {
  if (Z < 1)
    throw InputError("weak_charge: Z must be >= 1");
  if (N < 0.0)
    throw InputError("weak_charge: N must be >= 0");
  if (!(s2 > 0.0 && s2 <= 0.25))
    throw InputError("weak_charge: s2 outside (0, 0.25]");
  return -N + Z * (1.0 - 4.0 * s2);
}

/// Sandars parameter P_W = Q_W / (s^2 (1 - s^2)).
inline double p_w(int Z, double N, double s2) {
  return weak_charge(Z, N, s2) / (s2 * (1.0 - s2));
}

/// P_W~ = -3/(16 N) P_W; close to one for heavy nuclei.
inline double p_w_tilde(int Z, double N, double s2) {
  if (!(N > 0.0))
    throw InputError("p_w_tilde: undefined for N = 0");
  return -3.0 / (16.0 * N) * p_w(Z, N, s2);
}

/// Oblique correction (M_Z / M_Z*)^2 - 1.
inline double delta_p_m(double mz, double mz_star) {
  if (!(mz > 0.0) || !(mz_star > 0.0))
    throw InputError("delta_p_m: masses must be positive");
  const double r = mz / mz_star;
  return r * r - 1.0;
}

inline double delta_p_m(const ConstantsSet &c) {
  return delta_p_m(c.mz_GeV, c.mz_star_GeV);
}

/// Bouchiat form G_F Q_W / (2 sqrt 2), eV fm^3.
inline double a_pnc_bouchiat(double q_w, const ConstantsSet &c) {
  return c.fermi_constant_eV_fm3() * q_w / (2.0 * std::numbers::sqrt2);
}

/// Sandars form pi alpha P_W / (4 M_Z*^2), eV fm^3. Uses the q^2 = 0 mass.
inline double a_pnc_sandars(double p_w_value, const ConstantsSet &c) {
  const double mz_eV = c.mz_star_GeV * 1.0e9;
  const double hc = c.hbar_c_eV_fm;
  return std::numbers::pi * c.alpha / (4.0 * mz_eV * mz_eV) * p_w_value * hc *
         hc * hc;
}

struct WeakChargeReport {
  int Z = 0;
  double N = 0.0;
  double s2 = 0.0;
  double q_w = 0.0;
  double p_w = 0.0;
  double p_w_tilde = 0.0;
  double a_pnc_bouchiat = 0.0; // eV fm^3
  double a_pnc_sandars = 0.0;  // eV fm^3
  double delta_p_m = 0.0;
  double eta = 0.0;
};

/// Electroweak bookkeeping for one nucleus, evaluated at s*^2.
inline WeakChargeReport weak_charge_report(int Z, double N,
                                           const ConstantsSet &c) {
  WeakChargeReport r;
  r.Z = Z;
  r.N = N;
  r.s2 = c.sin2_theta_w_star;
  r.q_w = weak_charge(Z, N, r.s2);
  r.p_w = p_w(Z, N, r.s2);
  r.p_w_tilde = N > 0.0 ? p_w_tilde(Z, N, r.s2) : std::nan("");
  r.a_pnc_bouchiat = a_pnc_bouchiat(r.q_w, c);
  r.a_pnc_sandars = a_pnc_sandars(r.p_w, c);
  r.delta_p_m = delta_p_m(c);
  r.eta = 1.0 - 4.0 * r.s2;
  return r;
}

//******************************************************************************
//! Spacelike x-integral of the renormalised one-loop polarisation,
//! I(q^2) = int_0^1 x(1-x) ln[1 + (q^2/m^2) x(1-x)] dx, with q^2 >= 0 the
//! magnitude of the spacelike momentum transfer in units of m^2.
inline double pi_r(double q2_over_me2) {
  if (!(q2_over_me2 >= 0.0))
    throw InputError("pi_r: timelike (negative) argument not supported");
  if (q2_over_me2 == 0.0)
    return 0.0;
  const auto f = [a = q2_over_me2](double x) {
    const double u = x * (1.0 - x);
    return u * std::log1p(a * u);
  };
  // symmetric about x = 1/2
  return 2.0 * integrate_adaptive(f, 0.0, 0.5, 1e-12).value;
}

/// Low-field estimate of the loop correction to the PNC operator.
inline double delta_loop_op_estimate(int Z, double N, const ConstantsSet &c) {
  if (!(N >= 1.0))
    throw InputError("delta_loop_op_estimate: N must be >= 1");
  const double az = c.alpha * Z;
  return 1.0 / (15.0 * std::numbers::pi) * (-double(Z) / N) *
         (1.0 - 4.0 * c.sin2_theta_w_star) * c.alpha * az * az;
}

/// Low-field estimate alpha (alpha Z)^2 of the wave-function correction.
inline double delta_loop_wf_estimate(int Z, const ConstantsSet &c) {
  if (Z < 1)
    throw InputError("delta_loop_wf_estimate: Z must be >= 1");
  const double az = c.alpha * Z;
  return c.alpha * az * az;
}

/// (F_sf - F0) / (F_lf - F0): strong-field over low-field correction.
inline double f_rad(double F_sf, double F_lf, double F0) {
  if (F_lf == F0)
    throw InputError("f_rad: F_lf == F0, ratio undefined");
  return (F_sf - F0) / (F_lf - F0);
}

/// A q^2 = 0 correction and its strong-field enhancement f.
struct RadiativeTerm {
  double delta = 0.0;
  double f = 1.0;
};

/// Terms of the radiative-correction assembly. Absent terms contribute
/// nothing; there are no defaults for the anapole and vertex coefficients.
struct DeltaRadTerms {
  std::optional<RadiativeTerm> loop_op;
  std::optional<RadiativeTerm> anapole;
  std::optional<RadiativeTerm> vertex;
  double delta_wf = 0.0;
};

/// Strong-field minus low-field part of P_W~.
inline double delta_p_w_tilde(const DeltaRadTerms &t) {
  double s = 0.0;
  for (const auto &term : {t.loop_op, t.anapole, t.vertex})
    if (term)
      s += term->delta * (term->f - 1.0);
  return s;
}

inline double assemble_delta_rad(const DeltaRadTerms &t) {
  return delta_p_w_tilde(t) + t.delta_wf;
}

} // namespace hcipnc
