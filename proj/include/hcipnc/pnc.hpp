#pragma once

#include <cmath>
#include <cstddef>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/electroweak.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/numerics/grid.hpp"
#include "hcipnc/numerics/quadrature.hpp"
#include "hcipnc/uehling.hpp"

namespace hcipnc {

/// How the neutron number entering Q_W is obtained from (Z, A).
enum class NeutronCount {
  atomic_weight, // N = A - Z, A taken literally (reproduces the tables)
  rounded        // N = round(A) - Z
};

struct PncOptions {
  std::size_t grid_points = 8000;
  /// 0 selects r_max from the decay length of the least bound state.
  double r_max_fm = 0.0;
  double r_min_over_R = 1e-3;
  /// R = radius_r0_fm A^(1/3)
  double radius_r0_fm = kRadiusR0;
  /// Innermost node (fm) when the nucleus is a point.
  double point_r_min_fm = 1e-4;
  UehlingSource uehling = UehlingSource::uniform_sphere;
  NeutronCount neutrons = NeutronCount::atomic_weight;
  /// Mixing parameter for Q_W; unset means ConstantsSet::sin2_theta_w.
  std::optional<double> sin2_theta_w;
  SolverOptions solver{};
};

struct PncResult {
  int Z = 0;
  double A = 0.0;
  double R_fm = 0.0;
  int n = 2;
  int n_prime = 2;
  double q_w = 0.0;
  double a_pnc_eV_fm3 = 0.0;
  double m_plain_eV = 0.0;
  double m_uehling_eV = 0.0;
  double delta_loop_wf = 0.0;
};

//******************************************************************************
//! int rho_N (g_s f_p - f_s g_p) dr, fm^-3.
/*! For a point nucleus the density is a contact term and the integrand
    (g_s f_p - f_s g_p) / (4 pi r^2) is taken at the first grid node.
*/
inline double pnc_radial_integral(const DiracState &s, const DiracState &p,
                                  const NuclearModel &nuc) {
  if (s.kappa != -1 || p.kappa != 1)
    throw InputError("pnc_radial_integral: need an s1/2 (kappa=-1) and a "
                     "p1/2 (kappa=+1) state");
  if (!s.grid.same_as(p.grid))
    throw InputError("pnc_radial_integral: states on different grids");
  const auto &grid = s.grid;
  const auto rho = density(nuc);
  if (rho.contact) {
    const double r = grid[0];
    return (s.g[0] * p.f[0] - s.f[0] * p.g[0]) /
           (4.0 * std::numbers::pi * r * r);
  }
  const double R = nuc.radius_fm();
  if (!(R < grid.r_max()))
    throw InputError("pnc_radial_integral: nucleus larger than the grid");
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    w[i] = (s.g[i] * p.f[i] - s.f[i] * p.g[i]) *
           (grid[i] <= R ? rho.value(grid[i]) : 0.0);
  // The density is discontinuous at R: integrate only up to it.
  return integrate_on_grid_to(grid, w, R).value;
}

/// <s|H_PNC|p> in eV for A_PNC given in eV fm^3, returned as a real number:
/// the element is i times this value.
inline double pnc_matrix_element(const DiracState &s, const DiracState &p,
                                 const NuclearModel &nuc, double a_pnc_eV_fm3) {
  return a_pnc_eV_fm3 * pnc_radial_integral(s, p, nuc);
}

inline double pnc_matrix_element(const DiracState &s, const DiracState &p,
                                 const NuclearModel &nuc,
                                 const WeakChargeReport &ew) {
  return pnc_matrix_element(s, p, nuc, ew.a_pnc_bouchiat);
}

/// Grid for an (n, n') pair: node on the nuclear surface, r_min well
/// inside, r_max far enough out for the least bound state. A point nucleus
/// gets a plain exponential grid from PncOptions::point_r_min_fm.
inline RadialGrid make_pnc_grid(const NuclearModel &nuc, int n, int n_prime,
                                const ConstantsSet &c, const PncOptions &opt) {
  double r_max = opt.r_max_fm;
  if (r_max <= 0.0) {
    const int nmax = std::max(n, n_prime);
    const double w = sommerfeld_binding(nuc.Z(), nmax, -1, c);
    const double E = c.electron_mass_eV + w;
    const double lam =
        std::sqrt(-w * (c.electron_mass_eV + E)) / c.hbar_c_eV_fm;
    r_max = 75.0 / lam;
  }
  if (nuc.is_point())
    return RadialGrid(opt.point_r_min_fm, r_max, opt.grid_points);
  const double R = nuc.radius_fm();
  return RadialGrid::through(opt.r_min_over_R * R, r_max, opt.grid_points, R);
}

inline double neutron_number(const NuclearModel &nuc, NeutronCount rule) {
  return rule == NeutronCount::atomic_weight ? nuc.N_effective()
                                             : double(nuc.N());
}

//******************************************************************************
//! One ion: nucleus, grid and sampled Uehling potential, shared by every
//! solve the PNC quantities need.
class PncCalculation {
public:
  PncCalculation(int Z, double A, int n, int n_prime,
                 const ConstantsSet &c = {}, const PncOptions &opt = {})
      : c_(c), opt_(opt), nuc_(NuclearModel::uniform(Z, A, opt.radius_r0_fm)), n_(n),
        np_(n_prime) {
    validate(c);
    if (n < 1 || n_prime < 2)
      throw InputError("need n >= 1 and n' >= 2");
    grid_ = make_pnc_grid(nuc_, n, n_prime, c, opt);
    uehling_ = uehling_extra_potential(nuc_, grid_, c, opt.uehling);
    const double s2 = opt.sin2_theta_w.value_or(c.sin2_theta_w);
    q_w_ = weak_charge(Z, neutron_number(nuc_, opt.neutrons), s2);
    a_pnc_ = a_pnc_bouchiat(q_w_, c);
  }

  const NuclearModel &nucleus() const { return nuc_; }
  const RadialGrid &grid() const { return grid_; }
  const ExtraPotential &uehling() const { return uehling_; }
  double weak_charge_value() const { return q_w_; }
  double a_pnc() const { return a_pnc_; }

  /// ns1/2 and n'p1/2 with lambda times the Uehling potential added.
  std::pair<DiracState, DiracState> states(double lambda) const {
    const ExtraPotential extra =
        lambda == 0.0 ? ExtraPotential{} : lambda * uehling_;
    return {solve_bound_state(nuc_, grid_, n_, -1, c_, extra, opt_.solver),
            solve_bound_state(nuc_, grid_, np_, 1, c_, extra, opt_.solver)};
  }

  double radial_integral(double lambda) const {
    const auto [s, p] = states(lambda);
    return pnc_radial_integral(s, p, nuc_);
  }

  PncResult run() const {
    const double i0 = radial_integral(0.0);
    const double i1 = radial_integral(1.0);
    PncResult r;
    r.Z = nuc_.Z();
    r.A = nuc_.A();
    r.R_fm = nuc_.radius_fm();
    r.n = n_;
    r.n_prime = np_;
    r.q_w = q_w_;
    r.a_pnc_eV_fm3 = a_pnc_;
    r.m_plain_eV = a_pnc_ * i0;
    r.m_uehling_eV = a_pnc_ * i1;
    r.delta_loop_wf = i1 / i0 - 1.0;
    return r;
  }

  /// M(lambda)/M(0) - 1
  double delta_at_strength(double lambda) const {
    return radial_integral(lambda) / radial_integral(0.0) - 1.0;
  }

  /// (dM/dlambda)/M at lambda = 0: central differences at step and step/2,
  /// Richardson-combined.
  double first_order_delta(double step = 1e-3) const {
    if (!(step > 0.0))
      throw InputError("first_order_delta: step must be positive");
    const double m0 = radial_integral(0.0);
    auto central = [&](double h) {
      return (radial_integral(h) - radial_integral(-h)) / (2.0 * h);
    };
    const double d1 = central(step);
    const double d2 = central(0.5 * step);
    const double rich = (4.0 * d2 - d1) / 3.0;
    if (!std::isfinite(rich) || std::abs(d1 - d2) > 1e-3 * std::abs(rich))
      throw ConvergenceError("first_order_delta: Richardson sequence not "
                             "converging; reduce the step",
                             rich / m0, std::abs(d1 - d2) / std::abs(m0));
    return rich / m0;
  }

private:
  ConstantsSet c_;
  PncOptions opt_;
  NuclearModel nuc_;
  int n_, np_;
  RadialGrid grid_;
  ExtraPotential uehling_;
  double q_w_ = 0.0;
  double a_pnc_ = 0.0;
};

/// Matrix elements with and without the Uehling potential in the Dirac
/// equation, and delta = M_Uehling / M - 1.
inline PncResult compute_pnc_with_corrections(int Z, double A, int n,
                                              int n_prime,
                                              const ConstantsSet &c = {},
                                              const PncOptions &opt = {}) {
  try {
    return PncCalculation(Z, A, n, n_prime, c, opt).run();
  } catch (const InputError &e) {
    throw InputError("Z=" + std::to_string(Z) + " A=" + std::to_string(A) +
                     ": " + e.what());
  } catch (const NumericError &e) {
    throw NumericError("Z=" + std::to_string(Z) + " A=" + std::to_string(A) +
                       ": " + e.what());
  }
}

/// First-order (in the Uehling strength) estimate of delta.
inline double perturbative_cross_check(int Z, double A,
                                       double lambda_step = 1e-3,
                                       const ConstantsSet &c = {},
                                       const PncOptions &opt = {}, int n = 2,
                                       int n_prime = 2) {
  return PncCalculation(Z, A, n, n_prime, c, opt).first_order_delta(lambda_step);
}

//******************************************************************************
// Tables

struct Isotope {
  int Z = 0;
  double A = 0.0;
};

/// Z and atomic weight of the 21 ions of the reference tables, in order.
inline std::vector<Isotope> default_isotopes() {
  return {{1, 1.007},    {2, 4.001},    {3, 6.939},    {4, 9.010},
          {5, 10.807},   {6, 12.007},   {7, 14.002},   {8, 15.995},
          {9, 18.994},   {10, 20.173},  {20, 40.069},  {30, 65.363},
          {40, 91.198},  {50, 118.662}, {60, 144.207}, {70, 173.001},
          {80, 200.546}, {82, 207.155}, {90, 231.989}, {92, 234.993},
          {92, 238.000}};
}

struct TableRow {
  Isotope isotope;
  double R_fm = 0.0;
  std::optional<PncResult> result;
  std::string error; // set when result is empty
};

/// One row per isotope, in input order. Rows are computed concurrently when
/// `parallel` is set; a failing row records its error and the rest go on.
inline std::vector<TableRow> generate_table(const std::vector<Isotope> &isotopes,
                                            const ConstantsSet &c = {},
                                            const PncOptions &opt = {},
                                            int n = 2, int n_prime = 2,
                                            bool parallel = true) {
  auto one = [&](const Isotope &iso) {
    TableRow row;
    row.isotope = iso;
    try {
      row.R_fm = nuclear_radius(iso.A, opt.radius_r0_fm);
      row.result = compute_pnc_with_corrections(iso.Z, iso.A, n, n_prime, c, opt);
    } catch (const std::exception &e) {
      row.error = e.what();
    }
    return row;
  };
  std::vector<TableRow> rows;
  rows.reserve(isotopes.size());
  if (!parallel) {
    for (const auto &iso : isotopes)
      rows.push_back(one(iso));
    return rows;
  }
  std::vector<std::future<TableRow>> jobs;
  jobs.reserve(isotopes.size());
  for (const auto &iso : isotopes)
    jobs.push_back(std::async(std::launch::async, one, iso));
  for (auto &j : jobs)
    rows.push_back(j.get());
  return rows;
}

} // namespace hcipnc
