#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/electroweak.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/io.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/pnc.hpp"
#include "hcipnc/uehling.hpp"

namespace hcipnc::cli {

enum class Command { solve, uehling, pnc, table1, table2, constants };
enum class Format { csv, json };

enum ExitCode : int { ok = 0, usage = 1, input = 2, numeric = 3 };

/// Environment variable read when --constants-file is not given.
inline constexpr const char *kConstantsEnv = "HCIPNC_CONSTANTS";

struct RunConfig {
  Command command = Command::pnc;
  std::optional<int> Z;
  std::optional<double> A;
  int n = 2;
  int n_prime = 2;
  int kappa = -1;
  bool point_nucleus = false;
  std::optional<std::size_t> grid_points;
  std::optional<double> r_max_fm;
  double r0_fm = kRadiusR0;
  std::optional<std::string> constants_file;
  std::optional<std::string> isotopes_file;
  std::optional<Format> format; // unset: csv, json for `constants`
  std::optional<std::string> out;
  UehlingSource uehling = UehlingSource::uniform_sphere;
  NeutronCount neutrons = NeutronCount::atomic_weight;
  bool serial = false;
};

/// Single-line machine-readable error report.
inline std::string error_json(int code, const std::string &message) {
  const char *kind = code == usage ? "usage" : code == input ? "input" : "numeric";
  return json{{"error", {{"exit_code", code}, {"kind", kind}, {"message", message}}}}
      .dump();
}

namespace detail {

inline PncOptions pnc_options(const RunConfig &cfg) {
  PncOptions opt;
  if (cfg.grid_points)
    opt.grid_points = *cfg.grid_points;
  if (cfg.r_max_fm) {
    if (!(*cfg.r_max_fm > 0.0))
      throw InputError("--rmax must be positive");
    opt.r_max_fm = *cfg.r_max_fm;
  }
  opt.radius_r0_fm = cfg.r0_fm;
  opt.uehling = cfg.uehling;
  opt.neutrons = cfg.neutrons;
  return opt;
}

inline int require_Z(const RunConfig &cfg) {
  if (!cfg.Z)
    throw InputError("--Z is required for this command");
  return *cfg.Z;
}

inline double require_A(const RunConfig &cfg) {
  if (!cfg.A)
    throw InputError("--A is required for this command");
  return *cfg.A;
}

inline NuclearModel nucleus(const RunConfig &cfg) {
  const int Z = require_Z(cfg);
  if (cfg.point_nucleus)
    return NuclearModel::point(Z, cfg.A.value_or(double(Z)));
  return NuclearModel::uniform(Z, require_A(cfg), cfg.r0_fm);
}

inline std::vector<Isotope> isotopes(const RunConfig &cfg) {
  if (cfg.isotopes_file) {
    std::ifstream in(*cfg.isotopes_file);
    if (!in)
      throw InputError("cannot open isotope list '" + *cfg.isotopes_file + "'");
    return read_isotopes_csv(in);
  }
  if (cfg.Z && cfg.A)
    return {{*cfg.Z, *cfg.A}};
  auto all = default_isotopes();
  if (!cfg.Z)
    return all;
  std::vector<Isotope> picked;
  for (const auto &iso : all)
    if (iso.Z == *cfg.Z)
      picked.push_back(iso);
  if (picked.empty())
    throw InputError("Z=" + std::to_string(*cfg.Z) +
                     " is not in the default isotope list; give --A as well");
  return picked;
}

inline void emit(const RunConfig &cfg, std::ostream &out, const std::string &text) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.out, std::ios::binary | std::ios::trunc);
  if (!f)
    throw InputError("cannot open output file '" + *cfg.out + "'");
  f << text;
  if (!f)
    throw InputError("failed writing '" + *cfg.out + "'");
}

} // namespace detail

//******************************************************************************
//! Executes one command. Output goes to cfg.out when set, otherwise to
//! `out`; errors are reported on `err` as one JSON line and mapped to
//! the exit codes above. Nothing is written to the output on failure.
inline int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    const ConstantsSet c =
        cfg.constants_file ? load_constants(*cfg.constants_file) : default_constants();
    const Format fmt = cfg.format.value_or(
        cfg.command == Command::constants ? Format::json : Format::csv);
    const PncOptions opt = detail::pnc_options(cfg);
    std::ostringstream text;
    int status = ok;

    switch (cfg.command) {
    case Command::solve: {
      const auto nuc = detail::nucleus(cfg);
      validate_quantum_numbers(cfg.n, cfg.kappa);
      const auto grid = make_pnc_grid(nuc, cfg.n, cfg.n, c, opt);
      const auto s = solve_bound_state(nuc, grid, cfg.n, cfg.kappa, c, {}, opt.solver);
      if (fmt == Format::csv) {
        write_state_csv(text, s);
      } else {
        json j = to_json(s);
        j["Z"] = nuc.Z();
        j["R_fm"] = nuc.radius_fm();
        if (nuc.is_point())
          j["sommerfeld_energy_eV"] = sommerfeld_energy(nuc.Z(), cfg.n, cfg.kappa, c);
        text << j.dump(2) << '\n';
      }
      break;
    }
    case Command::uehling: {
      const auto nuc = detail::nucleus(cfg);
      const auto grid = make_pnc_grid(nuc, cfg.n, cfg.n_prime, c, opt);
      const auto t = uehling_on_grid(nuc, grid, c, opt.uehling);
      if (fmt == Format::csv)
        write_uehling_csv(text, t);
      else
        text << to_json(t).dump(2) << '\n';
      break;
    }
    case Command::pnc: {
      const auto r = compute_pnc_with_corrections(
          detail::require_Z(cfg), detail::require_A(cfg), cfg.n, cfg.n_prime, c, opt);
      if (fmt == Format::csv)
        write_pnc_csv(text, {r});
      else
        text << to_json(r).dump(2) << '\n';
      break;
    }
    case Command::table1:
    case Command::table2: {
      const auto rows = generate_table(detail::isotopes(cfg), c, opt, cfg.n,
                                       cfg.n_prime, !cfg.serial);
      if (fmt == Format::json)
        text << to_json(rows).dump(2) << '\n';
      else if (cfg.command == Command::table1)
        write_table1_csv(text, rows);
      else
        write_table2_csv(text, rows);
      // Failed rows are in the output; each one is also reported here.
      for (const auto &row : rows)
        if (!row.result) {
          err << error_json(numeric, row.error) << '\n';
          status = numeric;
        }
      break;
    }
    case Command::constants: {
      json j{{"constants", to_json(c)}};
      if (cfg.Z) {
        const auto nuc = detail::nucleus(cfg);
        const double N = neutron_number(nuc, cfg.neutrons);
        j["weak_charge"] = to_json(weak_charge_report(nuc.Z(), N, c));
        j["delta_loop_op_estimate"] = N >= 1.0 ? json(delta_loop_op_estimate(nuc.Z(), N, c)) : json(nullptr);
        j["delta_loop_wf_estimate"] = delta_loop_wf_estimate(nuc.Z(), c);
      }
      if (fmt == Format::json) {
        text << j.dump(2) << '\n';
      } else {
        text << "key,value\n";
        for (const auto &[section, obj] : j.items())
          if (obj.is_object()) {
            for (const auto &[k, v] : obj.items())
              text << section << '.' << k << ','
                   << (v.is_number_float() ? csv_number(v.get<double>()) : v.dump()) << '\n';
          } else {
            text << section << ','
                 << (obj.is_number_float() ? csv_number(obj.get<double>()) : obj.dump())
                 << '\n';
          }
      }
      break;
    }
    }
    detail::emit(cfg, out, text.str());
    return status;
  } catch (const InputError &e) {
    err << error_json(input, e.what()) << '\n';
    return input;
  } catch (const NumericError &e) {
    err << error_json(numeric, e.what()) << '\n';
    return numeric;
  } catch (const std::exception &e) {
    err << error_json(numeric, e.what()) << '\n';
    return numeric;
  }
}

//******************************************************************************
// Argument parsing

struct Parsed {
  std::optional<RunConfig> config; // empty when the program should exit
  int exit_code = ok;
};

inline Parsed parse(int argc, const char *const *argv, std::ostream &out,
                    std::ostream &err) {
  CLI::App app{"PNC matrix elements for hydrogenlike ions with the Uehling "
               "vacuum-polarisation correction"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  std::optional<int> Z;
  std::optional<double> A;
  std::size_t grid_points = 0;
  double r_max = 0.0;
  std::string constants_file, isotopes_file, format, out_path;
  std::string uehling = "uniform", neutrons = "atomic-weight";

  const std::map<std::string, Command> names{
      {"solve", Command::solve},   {"uehling", Command::uehling},
      {"pnc", Command::pnc},       {"table1", Command::table1},
      {"table2", Command::table2}, {"constants", Command::constants}};
  const std::map<std::string, std::string> help{
      {"solve", "Solve one bound state (n, kappa) and print r, g, f"},
      {"uehling", "Uehling potential on the radial grid of an ion"},
      {"pnc", "PNC matrix element <ns1/2|H_PNC|n'p1/2> with and without the "
              "Uehling potential"},
      {"table1", "Matrix elements for a list of ions"},
      {"table2", "Relative Uehling correction delta for a list of ions"},
      {"constants", "Physical constants and electroweak parameters"}};

  std::vector<CLI::App *> subs;
  for (const auto &[name, cmd] : names) {
    CLI::App *s = app.add_subcommand(name, help.at(name));
    subs.push_back(s);
    s->add_option("--Z", Z, "Nuclear charge (protons)");
    s->add_option("--A", A, "Atomic weight (u); sets R = r0 A^(1/3) fm");
    s->add_option("--n", cfg.n, "Principal quantum number of the s1/2 state "
                                "(solve: of the state)")
        ->capture_default_str();
    s->add_option("--nprime", cfg.n_prime,
                  "Principal quantum number of the p1/2 state")
        ->capture_default_str();
    s->add_option("--grid-points", grid_points,
                  "Radial grid points (dimensionless count, default 8000)");
    s->add_option("--rmax", r_max,
                  "Outer grid radius in fm (default: 75 decay lengths of the "
                  "least bound state)");
    s->add_option("--constants-file", constants_file,
                  "key = value file overriding constants (alpha, "
                  "electron_mass_eV, hbar_c_eV_fm in eV fm, fermi_constant in "
                  "GeV^-2, mz_GeV, mz_star_GeV in GeV, sin2_theta_w, "
                  "sin2_theta_w_star)")
        ->envname(kConstantsEnv);
    s->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", out_path, "Output file (default: standard output)");
    s->add_option("--r0", cfg.r0_fm,
                  "Radius coefficient in fm, R = r0 A^(1/3)")
        ->capture_default_str();
    s->add_option("--uehling-source", uehling,
                  "Charge the Uehling loop is attached to: uniform or point")
        ->check(CLI::IsMember({"uniform", "point"}))
        ->capture_default_str();
    s->add_option("--neutrons", neutrons,
                  "Neutron number in Q_W: atomic-weight (A - Z) or rounded")
        ->check(CLI::IsMember({"atomic-weight", "rounded"}))
        ->capture_default_str();
    if (name == "solve") {
      s->add_option("--kappa", cfg.kappa,
                    "Dirac angular quantum number (-1 = s1/2, +1 = p1/2)")
          ->capture_default_str();
      s->add_flag("--point-nucleus", cfg.point_nucleus,
                  "Point Coulomb nucleus instead of the uniform sphere");
    }
    if (name == "uehling")
      s->add_flag("--point-nucleus", cfg.point_nucleus,
                  "Point nucleus (the point kernel is used)");
    if (name == "table1" || name == "table2") {
      s->add_option("--isotopes", isotopes_file,
                    "CSV file of Z,A rows (default: the built-in 21 ions)");
      s->add_flag("--serial", cfg.serial, "Compute rows one at a time");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return {std::nullopt, ok};
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return {std::nullopt, ok};
  } catch (const CLI::ParseError &e) {
    err << error_json(usage, e.what()) << '\n';
    return {std::nullopt, usage};
  }

  for (CLI::App *s : subs)
    if (s->parsed()) {
      cfg.command = names.at(s->get_name());
      const auto given = [s](const char *opt) { return s->count(opt) > 0; };
      if (given("--grid-points"))
        cfg.grid_points = grid_points;
      if (given("--rmax"))
        cfg.r_max_fm = r_max;
      if (!constants_file.empty())
        cfg.constants_file = constants_file;
      if (given("--format"))
        cfg.format = format == "json" ? Format::json : Format::csv;
      if (given("--out"))
        cfg.out = out_path;
      if (!isotopes_file.empty())
        cfg.isotopes_file = isotopes_file;
    }
  cfg.Z = Z;
  cfg.A = A;
  cfg.uehling = parse_uehling_source(uehling);
  cfg.neutrons = neutrons == "rounded" ? NeutronCount::rounded
                                       : NeutronCount::atomic_weight;
  return {cfg, ok};
}

/// Whole program: parse, run, map to an exit status.
inline int main(int argc, const char *const *argv, std::ostream &out = std::cout,
                std::ostream &err = std::cerr) {
  const auto p = parse(argc, argv, out, err);
  if (!p.config)
    return p.exit_code;
  return run(*p.config, out, err);
}

} // namespace hcipnc::cli
