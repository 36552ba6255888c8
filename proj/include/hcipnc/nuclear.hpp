#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "hcipnc/constants.hpp"
#include "hcipnc/error.hpp"

namespace hcipnc {

enum class NuclearShape { point, uniform_sphere };

/// Coefficient r0 of R = r0 A^(1/3), fm.
inline constexpr double kRadiusR0 = 1.2;
/// r0 that reproduces the radii printed next to the reference tables
/// (1.2099 A^(1/3) to their three decimals, Z = 1 excepted).
inline constexpr double kTabulatedRadiusR0 = 1.2099;

/// R = r0 A^(1/3) fm
inline double nuclear_radius(double A, double r0_fm = kRadiusR0) {
  if (!(A > 0.0))
    throw InputError("nuclear_radius: A must be positive");
  if (!(r0_fm > 0.0))
    throw InputError("nuclear_radius: r0 must be positive");
  return r0_fm * std::cbrt(A);
}

//******************************************************************************
//! Nuclear charge distribution.
/*! Z protons, atomic weight A (real, as tabulated), radius in fm. The point
    shape is kept for validating the Dirac solver against the Coulomb
    closed form; everything else uses the uniform sphere.
*/
class NuclearModel {
public:
  NuclearModel(int Z, double A, double radius_fm,
               NuclearShape shape = NuclearShape::uniform_sphere)
      : Z_(Z), A_(A), radius_(radius_fm), shape_(shape) {
    if (Z < 1)
      throw InputError("NuclearModel: Z must be >= 1");
    if (!(A > 0.0))
      throw InputError("NuclearModel: A must be positive");
    if (shape == NuclearShape::uniform_sphere && !(radius_fm > 0.0))
      throw InputError("NuclearModel: uniform sphere needs radius > 0");
    if (std::lround(A) < Z)
      throw InputError("NuclearModel: A < Z");
  }

  /// Uniform sphere with R from nuclear_radius(A, r0).
  static NuclearModel uniform(int Z, double A, double r0_fm = kRadiusR0) {
    return {Z, A, nuclear_radius(A, r0_fm), NuclearShape::uniform_sphere};
  }
  static NuclearModel point(int Z, double A = 1.0) {
    return {Z, A < Z ? double(Z) : A, 0.0, NuclearShape::point};
  }

  int Z() const { return Z_; }
  double A() const { return A_; }
  double radius_fm() const { return radius_; }
  NuclearShape shape() const { return shape_; }
  bool is_point() const { return shape_ == NuclearShape::point; }

  /// round(A) - Z
  int N() const { return int(std::lround(A_)) - Z_; }
  /// A - Z with the atomic weight taken literally (non-integer).
  double N_effective() const { return A_ - Z_; }

  NuclearModel with_radius(double radius_fm) const {
    return {Z_, A_, radius_fm, NuclearShape::uniform_sphere};
  }

private:
  int Z_;
  double A_;
  double radius_;
  NuclearShape shape_;
};

/// Nuclear Coulomb potential energy of the electron, eV.
inline double coulomb_potential(const NuclearModel &nuc, double r_fm,
                                const ConstantsSet &c = {}) {
  if (!(r_fm > 0.0))
    throw InputError("coulomb_potential: r must be positive");
  const double za_hc = nuc.Z() * c.alpha * c.hbar_c_eV_fm;
  const double R = nuc.radius_fm();
  if (nuc.is_point() || r_fm >= R)
    return -za_hc / r_fm;
  const double x = r_fm / R;
  return -za_hc / (2.0 * R) * (3.0 - x * x);
}

/// Same as coulomb_potential but defined at r = 0 for the uniform sphere.
inline double coulomb_potential_at_origin(const NuclearModel &nuc,
                                          const ConstantsSet &c = {}) {
  if (nuc.is_point())
    throw InputError("point nucleus potential is singular at the origin");
  return -1.5 * nuc.Z() * c.alpha * c.hbar_c_eV_fm / nuc.radius_fm();
}

/// Normalised nuclear density rho_N(r), fm^-3, with 4 pi int r^2 rho = 1.
/// For a point nucleus `contact` is set and value() must not be used: the
/// matrix-element integrator evaluates the integrand at contact instead.
struct NuclearDensity {
  bool contact = false;
  double radius_fm = 0.0;

  double value(double r_fm) const {
    if (contact)
      throw InputError("point nucleus density has no pointwise value");
    if (r_fm > radius_fm)
      return 0.0;
    return 3.0 / (4.0 * std::numbers::pi * radius_fm * radius_fm * radius_fm);
  }
};

inline NuclearDensity density(const NuclearModel &nuc) {
  return nuc.is_point() ? NuclearDensity{true, 0.0}
                        : NuclearDensity{false, nuc.radius_fm()};
}

inline double density(const NuclearModel &nuc, double r_fm) {
  if (r_fm < 0.0)
    throw InputError("density: r must be >= 0");
  return density(nuc).value(r_fm);
}

} // namespace hcipnc
