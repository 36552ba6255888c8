#include <chrono>
#include <cmath>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/pnc.hpp"

using namespace hcipnc;

namespace {

const ConstantsSet kC{};

RadialGrid grid_for(const NuclearModel &nuc, int n, std::size_t points = 8000) {
  PncOptions opt;
  opt.grid_points = points;
  return make_pnc_grid(nuc, n, n, kC, opt);
}

// Closed-form Dirac-Coulomb energy written out independently of the library.
double sommerfeld_oracle(int Z, int n, int kappa) {
  const double az = Z / 137.035999084;
  const double g = std::sqrt(kappa * kappa - az * az);
  const double d = n - std::abs(kappa) + g;
  return 0.51099895e6 / std::sqrt(1.0 + az * az / (d * d));
}

struct Case {
  int Z, n, kappa;
};

} // namespace

//------------------------------------------------------------------------------
// Closed form

TEST(Sommerfeld, GroundStateIsGamma) {
  const double az = 92 * kC.alpha;
  EXPECT_NEAR(sommerfeld_energy(92, 1, -1, kC) / kC.electron_mass_eV,
              std::sqrt(1 - az * az), 1e-14);
  EXPECT_NEAR(std::sqrt(1 - az * az), 0.74112, 2e-5);
}

TEST(Sommerfeld, MatchesIndependentOracle) {
  for (int Z : {1, 20, 60, 92})
    for (auto [n, k] : {std::pair{1, -1}, {2, -1}, {2, 1}, {3, -2}})
      EXPECT_NEAR(sommerfeld_energy(Z, n, k, kC) / sommerfeld_oracle(Z, n, k), 1.0, 1e-15);
}

TEST(Sommerfeld, HydrogenBinding) {
  const double b = -sommerfeld_binding(1, 1, -1, kC);
  EXPECT_NEAR(b / 13.6057, 1.0, 1e-4);
  EXPECT_NEAR(sommerfeld_energy(1, 1, -1, kC) / kC.electron_mass_eV - 1.0,
              -b / kC.electron_mass_eV, 1e-16);
}

TEST(Sommerfeld, NonRelativisticLimit) {
  // binding -> -Z^2/(2n^2) hartree, with corrections of relative order (alpha Z)^2
  for (int Z : {1, 5, 20})
    for (int n : {1, 2, 3}) {
      const double nr = -Z * Z / (2.0 * n * n) * kC.hartree_eV();
      const double az2 = std::pow(Z * kC.alpha, 2);
      const double rel = sommerfeld_binding(Z, n, -1, kC) / nr - 1.0;
      EXPECT_GT(rel, 0.0);
      EXPECT_LT(rel, az2);
    }
  EXPECT_NEAR(sommerfeld_binding(1, 1, -1, kC) / kC.electron_mass_eV, 0.0, 3e-5);
}

TEST(Sommerfeld, RejectsSupercritical) {
  EXPECT_THROW(sommerfeld_energy(138, 1, -1, kC), InputError);
  EXPECT_THROW(sommerfeld_energy(1, 1, 1, kC), InputError);
}

//------------------------------------------------------------------------------
// Solver against the closed form

TEST(DiracSolver, PointCoulombMatchesSommerfeld) {
  for (int Z : {1, 20, 60, 92})
    for (auto [n, k] : {std::pair{1, -1}, {2, -1}, {2, 1}}) {
      const auto nuc = NuclearModel::point(Z);
      const auto t0 = std::chrono::steady_clock::now();
      const auto s = solve_bound_state(nuc, grid_for(nuc, n), n, k, kC);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const double exact = sommerfeld_oracle(Z, n, k);
      EXPECT_NEAR(s.energy_eV / exact, 1.0, 1e-10) << Z << " " << n << " " << k;
      const double wb = sommerfeld_binding(Z, n, k, kC);
      EXPECT_NEAR(s.binding_eV / wb, 1.0, 1e-10) << Z << " " << n << " " << k;
      EXPECT_LT(secs, 2.0);
    }
}

TEST(DiracSolver, PointCoulombTwoSTwoPDegenerate) {
  for (int Z : {1, 20, 60, 92}) {
    const auto nuc = NuclearModel::point(Z);
    const auto g = grid_for(nuc, 2);
    const auto s = solve_bound_state(nuc, g, 2, -1, kC);
    const auto p = solve_bound_state(nuc, g, 2, 1, kC);
    EXPECT_LE(std::abs(s.energy_eV - p.energy_eV) / s.energy_eV, 1e-10) << Z;
  }
}

TEST(DiracSolver, FiniteSizeRaisesS) {
  // Shift of 2s against the point nucleus, and its first-order estimate
  // int (g^2 + f^2)(V_ext - V_point) dr on the point-Coulomb state. The
  // estimate fixes the sign; it is quantitative only for small Z.
  for (auto [Z, A, tol] : {std::tuple{92, 238.0, 0.4}, {20, 40.069, 0.03}}) {
    const auto nuc = NuclearModel::uniform(Z, A);
    const auto g = grid_for(nuc, 2);
    const auto s = solve_bound_state(nuc, g, 2, -1, kC);
    const auto p = solve_bound_state(nuc, g, 2, 1, kC);
    EXPECT_GT(s.energy_eV, p.energy_eV) << Z;

    const auto point = NuclearModel::point(Z, A);
    const auto s0 = solve_bound_state(point, g, 2, -1, kC);
    std::vector<double> d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      d[i] = (s0.g[i] * s0.g[i] + s0.f[i] * s0.f[i]) *
             (coulomb_potential(nuc, g[i], kC) - coulomb_potential(point, g[i], kC));
    const double shift = integrate_on_grid(g, d).value + origin_tail(g, d);
    EXPECT_GT(shift, 0.0) << Z;
    EXPECT_GT(s.binding_eV - s0.binding_eV, 0.0) << Z;
    EXPECT_NEAR((s.binding_eV - s0.binding_eV) / shift, 1.0, tol) << Z;
  }
}

//------------------------------------------------------------------------------
// State invariants

class StateInvariants : public ::testing::TestWithParam<Case> {};

TEST_P(StateInvariants, NormNodesBoundary) {
  const auto [Z, n, k] = GetParam();
  for (const auto &nuc : {NuclearModel::uniform(Z, 2.5 * Z), NuclearModel::point(Z)}) {
    const auto s = solve_bound_state(nuc, grid_for(nuc, n), n, k, kC);
    EXPECT_NEAR(norm(s), 1.0, 1e-9);
    EXPECT_EQ(count_nodes(s.g), s.expected_nodes());
    double gmax = 0, fmax = 0;
    for (std::size_t i = 0; i < s.g.size(); ++i) {
      gmax = std::max(gmax, std::abs(s.g[i]));
      fmax = std::max(fmax, std::abs(s.f[i]));
    }
    EXPECT_LT(std::abs(s.g.back()), 1e-12 * gmax);
    EXPECT_LT(std::abs(s.f.back()), 1e-12 * fmax);
    EXPECT_LT(s.binding_eV, 0.0);
  }
}

TEST_P(StateInvariants, EnergyFromComponents) {
  // <V> + <T> reconstructs E, with T the free Dirac operator on the grid.
  const auto [Z, n, k] = GetParam();
  const auto nuc = NuclearModel::uniform(Z, 2.5 * Z);
  const auto s = solve_bound_state(nuc, grid_for(nuc, n), n, k, kC);
  const auto e = energy_expectation(s, nuc, kC);
  EXPECT_NEAR(e.total() / s.energy_eV, 1.0, 1e-8);
}

TEST_P(StateInvariants, ConstantShift) {
  const auto [Z, n, k] = GetParam();
  const auto nuc = NuclearModel::uniform(Z, 2.5 * Z);
  const auto g = grid_for(nuc, n);
  const auto s = solve_bound_state(nuc, g, n, k, kC);
  const double shift = -0.37 * std::abs(s.binding_eV);
  const auto t = solve_bound_state(nuc, g, n, k, kC,
                                   sample_potential(g, [=](double) { return shift; }));
  EXPECT_NEAR((t.energy_eV - s.energy_eV - shift) / s.energy_eV, 0.0, 1e-10);
  double gmax = 0.0;
  for (double x : s.g)
    gmax = std::max(gmax, std::abs(x));
  for (std::size_t i = 0; i < g.size(); ++i) {
    ASSERT_NEAR(t.g[i], s.g[i], 1e-10 * gmax) << i;
    ASSERT_NEAR(t.f[i], s.f[i], 1e-10 * gmax) << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Ions, StateInvariants,
                         ::testing::Values(Case{1, 1, -1}, Case{1, 2, -1}, Case{1, 2, 1},
                                           Case{20, 2, -1}, Case{60, 2, 1}, Case{92, 1, -1},
                                           Case{92, 2, -1}, Case{92, 2, 1}));

TEST(DiracSolver, Orthogonality) {
  for (int Z : {1, 50, 92}) {
    const auto nuc = NuclearModel::uniform(Z, 2.5 * Z);
    const auto g = grid_for(nuc, 3);
    const auto s1 = solve_bound_state(nuc, g, 1, -1, kC);
    const auto s2 = solve_bound_state(nuc, g, 2, -1, kC);
    const auto s3 = solve_bound_state(nuc, g, 3, -1, kC);
    const auto p2 = solve_bound_state(nuc, g, 2, 1, kC);
    const auto p3 = solve_bound_state(nuc, g, 3, 1, kC);
    EXPECT_LT(std::abs(overlap(s1, s2)), 1e-8) << Z;
    EXPECT_LT(std::abs(overlap(s1, s3)), 1e-8) << Z;
    EXPECT_LT(std::abs(overlap(s2, s3)), 1e-8) << Z;
    EXPECT_LT(std::abs(overlap(p2, p3)), 1e-8) << Z;
  }
}

TEST(DiracSolver, RegularBehaviourAtOrigin) {
  // Inside a uniform sphere g ~ r^(l+1): log-slope at the first nodes.
  const auto nuc = NuclearModel::uniform(92, 238.0);
  const auto g = grid_for(nuc, 2);
  for (int k : {-1, 1}) {
    const auto s = solve_bound_state(nuc, g, 2, k, kC);
    const double slope = std::log(s.g[1] / s.g[0]) / g.log_step();
    EXPECT_NEAR(slope, s.l() + 1, 1e-4) << k;
  }
}

TEST(DiracSolver, Errors) {
  const auto nuc = NuclearModel::uniform(20, 40.0);
  const auto g = grid_for(nuc, 2);
  EXPECT_THROW(solve_bound_state(nuc, g, 0, -1, kC), InputError);
  EXPECT_THROW(solve_bound_state(nuc, g, 1, 1, kC), InputError);
  EXPECT_THROW(solve_bound_state(nuc, g, 2, 0, kC), InputError);
  // grid that ends well inside the 2s orbital
  const RadialGrid tiny(1e-3, 2000.0, 4000);
  EXPECT_THROW(solve_bound_state(nuc, tiny, 2, -1, kC), NumericError);
}

TEST(DiracSolver, Deterministic) {
  const auto nuc = NuclearModel::uniform(82, 207.155);
  const auto g = grid_for(nuc, 2);
  const auto a = solve_bound_state(nuc, g, 2, 1, kC);
  const auto b = solve_bound_state(nuc, g, 2, 1, kC);
  EXPECT_EQ(a.energy_eV, b.energy_eV);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.f, b.f);
}
