#pragma once

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/electroweak.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/pnc.hpp"
#include "hcipnc/uehling.hpp"

namespace hcipnc {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string fmt(const char *format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

} // namespace detail

/// Fixed number formatting shared by every CSV writer, so that output is
/// byte-identical between runs and platforms with the same libc.
inline std::string csv_number(double x) { return detail::fmt("%.9e", x); }
inline std::string csv_short(double x) { return detail::fmt("%.10g", x); }

//******************************************************************************
// CSV

inline constexpr const char *kPncCsvHeader =
    "Z,A,R_fm,PNC_eV,PNC_Uehling_eV,delta_loop_wf";
inline constexpr const char *kTable1CsvHeader = "Z,A,R_fm,PNC_eV,PNC_Uehling_eV";
inline constexpr const char *kTable2CsvHeader = "Z,A,R_fm,delta_loop_wf";

inline void write_pnc_csv(std::ostream &os, const std::vector<PncResult> &rs) {
  os << kPncCsvHeader << '\n';
  for (const auto &r : rs)
    os << r.Z << ',' << csv_short(r.A) << ',' << csv_short(r.R_fm) << ','
       << csv_number(r.m_plain_eV) << ',' << csv_number(r.m_uehling_eV) << ','
       << csv_number(r.delta_loop_wf) << '\n';
}

// Failed rows keep their Z, A and R and print "nan" in the value columns.
inline void write_table1_csv(std::ostream &os, const std::vector<TableRow> &rows) {
  os << kTable1CsvHeader << '\n';
  for (const auto &row : rows) {
    os << row.isotope.Z << ',' << csv_short(row.isotope.A) << ','
       << csv_short(row.R_fm) << ',';
    if (row.result)
      os << csv_number(row.result->m_plain_eV) << ','
         << csv_number(row.result->m_uehling_eV);
    else
      os << "nan,nan";
    os << '\n';
  }
}

inline void write_table2_csv(std::ostream &os, const std::vector<TableRow> &rows) {
  os << kTable2CsvHeader << '\n';
  for (const auto &row : rows) {
    os << row.isotope.Z << ',' << csv_short(row.isotope.A) << ','
       << csv_short(row.R_fm) << ','
       << (row.result ? csv_number(row.result->delta_loop_wf) : "nan") << '\n';
  }
}

inline void write_state_csv(std::ostream &os, const DiracState &s) {
  os << "r_fm,g,f\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i)
    os << csv_number(s.grid[i]) << ',' << csv_number(s.g[i]) << ','
       << csv_number(s.f[i]) << '\n';
}

inline void write_uehling_csv(std::ostream &os, const UehlingTable &t) {
  os << "r_fm,V_U_eV\n";
  for (std::size_t i = 0; i < t.grid.size(); ++i)
    os << csv_number(t.grid[i]) << ',' << csv_number(t.values[i]) << '\n';
}

//******************************************************************************
// JSON

inline json to_json(const PncResult &r) {
  return {{"Z", r.Z},
          {"A", r.A},
          {"R_fm", r.R_fm},
          {"n", r.n},
          {"n_prime", r.n_prime},
          {"q_w", r.q_w},
          {"a_pnc_eV_fm3", r.a_pnc_eV_fm3},
          {"m_plain_eV", r.m_plain_eV},
          {"m_uehling_eV", r.m_uehling_eV},
          {"delta_loop_wf", r.delta_loop_wf}};
}

inline json to_json(const TableRow &row) {
  if (row.result)
    return to_json(*row.result);
  return {{"Z", row.isotope.Z},
          {"A", row.isotope.A},
          {"R_fm", row.R_fm},
          {"error", row.error}};
}

inline json to_json(const std::vector<TableRow> &rows) {
  json a = json::array();
  for (const auto &r : rows)
    a.push_back(to_json(r));
  return a;
}

inline json to_json(const ConstantsSet &c) {
  return {{"alpha", c.alpha},
          {"electron_mass_eV", c.electron_mass_eV},
          {"hbar_c_eV_fm", c.hbar_c_eV_fm},
          {"fermi_constant", c.fermi_constant},
          {"mz_GeV", c.mz_GeV},
          {"mz_star_GeV", c.mz_star_GeV},
          {"sin2_theta_w_star", c.sin2_theta_w_star},
          {"sin2_theta_w", c.sin2_theta_w},
          {"compton_fm", c.compton_fm()},
          {"fermi_constant_eV_fm3", c.fermi_constant_eV_fm3()},
          {"delta_p_m", delta_p_m(c)}};
}

inline json to_json(const WeakChargeReport &r) {
  return {{"Z", r.Z},
          {"N", r.N},
          {"s2", r.s2},
          {"q_w", r.q_w},
          {"p_w", r.p_w},
          {"p_w_tilde", r.p_w_tilde},
          {"a_pnc_bouchiat_eV_fm3", r.a_pnc_bouchiat},
          {"a_pnc_sandars_eV_fm3", r.a_pnc_sandars},
          {"delta_p_m", r.delta_p_m},
          {"eta", r.eta}};
}

inline json to_json(const DiracState &s) {
  return {{"n", s.n},
          {"kappa", s.kappa},
          {"energy_eV", s.energy_eV},
          {"binding_eV", s.binding_eV},
          {"r_fm", std::vector<double>(s.grid.points().begin(), s.grid.points().end())},
          {"g", s.g},
          {"f", s.f}};
}

inline json to_json(const UehlingTable &t) {
  return {{"Z", t.Z}, {"r_fm", std::vector<double>(t.grid.points().begin(), t.grid.points().end())}, {"V_U_eV", t.values}};
}

//******************************************************************************
//! Isotope list as CSV, one "Z,A" pair per line. A first line that does not
//! start with a digit is taken as a header; blank lines and '#' comments are
//! skipped.
inline std::vector<Isotope> read_isotopes_csv(std::istream &in) {
  std::vector<Isotope> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto first = line.find_first_not_of(" \t");
    if (out.empty() && lineno == 1 && !std::isdigit((unsigned char)line[first]))
      continue;
    std::istringstream ls(line);
    Isotope iso;
    char comma = 0;
    if (!(ls >> iso.Z >> comma >> iso.A) || comma != ',' ||
        !(ls >> std::ws).eof())
      throw InputError("isotope list line " + std::to_string(lineno) +
                       ": expected 'Z,A'");
    out.push_back(iso);
  }
  return out;
}

} // namespace hcipnc
