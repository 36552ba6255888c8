#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "hcipnc/error.hpp"

namespace hcipnc {

//******************************************************************************
//! Physical constants used throughout the library.
/*! Defaults are CODATA 2018 / PDG values, except the two electroweak mixing
    parameters, which follow the conventions the PNC tables were produced
    with:
      - sin2_theta_w_star = 0.2394 is the effective q^2 = 0 value entering
        the Sandars parameter P_W~* and the eta = 1 - 4 s^2 suppression.
      - sin2_theta_w = 0.23 is the tree-level value entering Q_W in the
        Bouchiat normalisation A_PNC = G_F Q_W / (2 sqrt 2) of the tabulated
        matrix elements.
    mz_star_GeV is stored (not derived) and defaults to M_Z / sqrt(1.0880).

    Immutable after construction; pass by value or const reference.
*/
struct ConstantsSet {
  double alpha = 1.0 / 137.035999084;
  double electron_mass_eV = 0.51099895000e6;
  double hbar_c_eV_fm = 197.3269804e6;
  double fermi_constant = 1.1663787e-5; // GeV^-2
  double mz_GeV = 91.1876;
  double mz_star_GeV = 91.1876 / std::sqrt(1.0880);
  double sin2_theta_w_star = 0.2394;
  double sin2_theta_w = 0.23;

  /// 1 - 4 s*^2
  double eta() const { return 1.0 - 4.0 * sin2_theta_w_star; }
  /// Reduced Compton wavelength hbar/(m c), fm.
  double compton_fm() const { return hbar_c_eV_fm / electron_mass_eV; }
  /// alpha^2 m c^2, eV.
  double hartree_eV() const { return alpha * alpha * electron_mass_eV; }
  /// G_F expressed in eV fm^3 (i.e. G_F (hbar c)^3).
  double fermi_constant_eV_fm3() const {
    const double hc_GeV_fm = hbar_c_eV_fm * 1.0e-9;
    return fermi_constant * hc_GeV_fm * hc_GeV_fm * hc_GeV_fm * 1.0e9;
  }
};

/// Throws InputError if any invariant of the set is violated.
inline void validate(const ConstantsSet &c) {
  auto require = [](bool ok, const char *msg) {
    if (!ok)
      throw InputError(std::string("invalid constants: ") + msg);
  };
  require(c.alpha > 1.0 / 138.0 && c.alpha < 1.0 / 137.0,
          "alpha outside (1/138, 1/137)");
  require(c.sin2_theta_w_star > 0.0 && c.sin2_theta_w_star < 0.25,
          "sin2_theta_w_star outside (0, 0.25)");
  require(c.sin2_theta_w > 0.0 && c.sin2_theta_w < 0.25,
          "sin2_theta_w outside (0, 0.25)");
  require(c.electron_mass_eV > 0.0, "electron_mass_eV must be positive");
  require(c.hbar_c_eV_fm > 0.0, "hbar_c_eV_fm must be positive");
  require(c.fermi_constant > 0.0, "fermi_constant must be positive");
  require(c.mz_GeV > 0.0, "mz_GeV must be positive");
  require(c.mz_star_GeV > 0.0, "mz_star_GeV must be positive");
}

inline ConstantsSet default_constants() { return ConstantsSet{}; }

//******************************************************************************
// Energy units

enum class EnergyUnit { eV, natural, hartree };

inline EnergyUnit parse_energy_unit(std::string_view name) {
  if (name == "eV" || name == "ev")
    return EnergyUnit::eV;
  if (name == "natural" || name == "mc2" || name == "me")
    return EnergyUnit::natural;
  if (name == "hartree" || name == "Eh" || name == "au")
    return EnergyUnit::hartree;
  throw InputError("unknown energy unit '" + std::string(name) + "'");
}

inline double unit_in_eV(EnergyUnit u, const ConstantsSet &c) {
  switch (u) {
  case EnergyUnit::eV:
    return 1.0;
  case EnergyUnit::natural:
    return c.electron_mass_eV;
  case EnergyUnit::hartree:
    return c.hartree_eV();
  }
  throw InputError("unknown energy unit");
}

inline double convert_energy(double value, EnergyUnit from, EnergyUnit to,
                             const ConstantsSet &c = {}) {
  if (from == to)
    return value;
  return value * (unit_in_eV(from, c) / unit_in_eV(to, c));
}

inline double convert_energy(double value, std::string_view from,
                             std::string_view to, const ConstantsSet &c = {}) {
  return convert_energy(value, parse_energy_unit(from), parse_energy_unit(to),
                        c);
}

//******************************************************************************
// Key-value configuration
//
//   # comment
//   alpha = 0.0072973525693
//   sin2_theta_w_star = 0.2394
//
// Keys are the ConstantsSet field names. Unknown keys are rejected.

inline ConstantsSet read_constants(std::istream &in,
                                   ConstantsSet base = default_constants()) {
  const std::map<std::string, double ConstantsSet::*> fields{
      {"alpha", &ConstantsSet::alpha},
      {"electron_mass_eV", &ConstantsSet::electron_mass_eV},
      {"hbar_c_eV_fm", &ConstantsSet::hbar_c_eV_fm},
      {"fermi_constant", &ConstantsSet::fermi_constant},
      {"mz_GeV", &ConstantsSet::mz_GeV},
      {"mz_star_GeV", &ConstantsSet::mz_star_GeV},
      {"sin2_theta_w_star", &ConstantsSet::sin2_theta_w_star},
      {"sin2_theta_w", &ConstantsSet::sin2_theta_w}};

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("constants file line " + std::to_string(lineno) +
                       ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    const auto it = fields.find(key);
    if (it == fields.end())
      throw InputError("constants file line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    std::istringstream vs(val);
    double x{};
    if (!(vs >> x) || !(vs >> std::ws).eof())
      throw InputError("constants file line " + std::to_string(lineno) +
                       ": bad number '" + val + "'");
    base.*(it->second) = x;
  }
  validate(base);
  return base;
}

inline ConstantsSet load_constants(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open constants file '" + path + "'");
  return read_constants(in);
}

} // namespace hcipnc
