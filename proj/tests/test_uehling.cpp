#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/pnc.hpp"
#include "hcipnc/uehling.hpp"

using namespace hcipnc;

namespace {

const ConstantsSet kC{};

// Point-source Uehling potential straight from the y-integral,
//   -(2 alpha/3 pi)(Z alpha hbar c / r) int_1^inf e^{-2xy}(1 + 1/2y^2) sqrt(y^2-1)/y^2 dy,
// with y = 1 + s^2 and a fixed composite Simpson rule in s.
double uehling_oracle(int Z, double r_fm) {
  const double x = r_fm / kC.compton_fm();
  const double s_max = std::sqrt(46.0 / (2.0 * x)); // e^{-2x(y-1)} < 1e-20
  const int n = 400000;
  const double h = s_max / n;
  auto f = [x](double s) {
    const double y = 1.0 + s * s;
    // sqrt(y^2 - 1) dy = s sqrt(2 + s^2) 2 s ds
    return std::exp(-2.0 * x * (y - 1.0)) * (1.0 + 0.5 / (y * y)) * 2.0 * s * s *
           std::sqrt(2.0 + s * s) / (y * y);
  };
  double sum = f(0.0) + f(s_max);
  for (int i = 1; i < n; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  const double I = sum * h / 3.0 * std::exp(-2.0 * x);
  return -2.0 * kC.alpha / (3.0 * std::numbers::pi) * Z * kC.alpha * kC.hbar_c_eV_fm / r_fm * I;
}

// Uniform-sphere potential by direct folding of the point form:
//   V(r) = (2 pi / r) int_0^R r' rho int_{|r-r'|}^{r+r'} s V_1(s) ds dr'
double folded_oracle(int Z, double R, double r) {
  const double rho = 3.0 / (4.0 * std::numbers::pi * R * R * R);
  boost::math::quadrature::tanh_sinh<double> ts;
  auto inner = [&](double rp) {
    const double lo = std::abs(r - rp), hi = r + rp;
    if (hi - lo <= 0.0)
      return 0.0;
    auto g = [&](double s) { return s > 0.0 ? s * uehling_point(Z, s, kC) : 0.0; };
    return rp * ts.integrate(g, lo, hi, 1e-10);
  };
  double outer = 0.0;
  if (r > 0.0 && r < R)
    outer = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, 0.0, r, 8,
                                                                          1e-12) +
            boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, r, R, 8,
                                                                          1e-12);
  else
    outer = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, 0.0, R, 8,
                                                                          1e-12);
  return 2.0 * std::numbers::pi / r * rho * outer;
}

} // namespace

TEST(UehlingPoint, LinearInZ) {
  for (double r : {1e-3, 0.5, 7.5, 100.0, 386.0, 3000.0}) {
    const double v1 = uehling_point(1, r, kC);
    for (int Z : {2, 50, 92})
      EXPECT_NEAR(uehling_point(Z, r, kC) / v1, Z, 1e-12 * Z) << r;
  }
}

TEST(UehlingPoint, MatchesBruteForceAtHalfCompton) {
  const double r = 0.5 * kC.compton_fm();
  const double v = uehling_point(1, r, kC);
  EXPECT_NEAR(v / uehling_oracle(1, r), 1.0, 1e-8);
}

TEST(UehlingPoint, MatchesBruteForceElsewhere) {
  for (double r : {1.0, 7.5, 100.0, 1500.0})
    EXPECT_NEAR(uehling_point(92, r, kC) / uehling_oracle(92, r), 1.0, 1e-8) << r;
}

TEST(UehlingPoint, AttractiveAndDecreasing) {
  double prev = -INFINITY;
  for (double r = 1e-4; r < 2e4; r *= 1.3) {
    const double v = uehling_point(10, r, kC);
    EXPECT_LT(v, 0.0) << r;
    EXPECT_GT(v, prev) << r; // |V| strictly decreasing
    prev = v;
  }
}

TEST(UehlingPoint, AsymptoticDecay) {
  // For m r >= 20 the ratio over a step d is below e^{-2 m d} (1 + 1e-2).
  const double lc = kC.compton_fm();
  for (double x : {20.0, 30.0, 60.0})
    for (double d : {0.1, 0.5, 2.0}) {
      const double r = x * lc;
      const double ratio = uehling_point(1, r + d * lc, kC) / uehling_point(1, r, kC);
      EXPECT_LE(ratio, std::exp(-2.0 * d) * 1.01) << x << " " << d;
      EXPECT_GT(ratio, 0.0);
    }
}

TEST(UehlingPoint, AsymptoticLogSlope) {
  const double lc = kC.compton_fm();
  for (double x : {20.0, 40.0}) {
    const double r = x * lc, h = 1e-3 * lc;
    const double slope = (std::log(-uehling_point(1, r + h, kC)) -
                          std::log(-uehling_point(1, r - h, kC))) /
                         (2.0 * h / lc);
    EXPECT_LE(slope, -2.0) << x;
  }
}

TEST(UehlingPoint, SmallDistanceLogEnhancement) {
  // |V| r / (Z alpha hbar c) grows like (2 alpha / 3 pi) ln(1 / m r).
  const double lc = kC.compton_fm();
  auto F = [&](double x) {
    return -uehling_point(1, x * lc, kC) * x * lc / (kC.alpha * kC.hbar_c_eV_fm);
  };
  const double lead = 2.0 * kC.alpha / (3.0 * std::numbers::pi);
  std::vector<double> slopes;
  for (double x = 1e-3; x >= 1e-6 * 0.999; x /= 10.0) {
    const double s = (F(x / 10.0) - F(x)) / std::log(10.0);
    EXPECT_GT(s, 0.0) << x;
    EXPECT_NEAR(s / lead, 1.0, 1e-2) << x;
    slopes.push_back(s);
  }
  for (std::size_t i = 1; i < slopes.size(); ++i)
    EXPECT_GT(slopes[i], slopes[i - 1]);
}

TEST(UehlingPoint, RejectsNonPositiveRadius) {
  EXPECT_THROW(uehling_point(1, 0.0, kC), InputError);
  EXPECT_THROW(uehling_point(1, -2.0, kC), InputError);
  EXPECT_THROW(uehling_uniform(1, 1.0, 0.0, kC), InputError);
  EXPECT_THROW(uehling_uniform(1, 0.0, 1.0, kC), InputError);
}

TEST(UehlingPoint, UnderflowIsZero) {
  EXPECT_EQ(uehling_point(1, 1e6, kC), 0.0);
  EXPECT_EQ(uehling_uniform(1, 1.2, 1e6, kC), 0.0);
}

//------------------------------------------------------------------------------
// Uniform sphere source

TEST(UehlingUniform, MatchesDirectFolding) {
  const double R = 7.4366;
  for (double r : {0.05, 2.0, 5.0, R, 9.0, 40.0})
    EXPECT_NEAR(uehling_uniform(92, R, r, kC) / folded_oracle(92, R, r), 1.0, 1e-7) << r;
}

TEST(UehlingUniform, PointLimit) {
  for (double r : {0.01, 1.0, 50.0, 800.0})
    EXPECT_NEAR(uehling_uniform(1, 1e-6, r, kC) / uehling_point(1, r, kC), 1.0, 1e-6) << r;
}

// Inside the sphere the spread charge weakens the potential; outside, the
// short range of the kernel makes the near side win (as for a Yukawa
// potential, the factor 3(kR cosh kR - sinh kR)/(kR)^3 exceeds one).
TEST(UehlingUniform, FiniteAtOriginAndComparedWithPoint) {
  const double R = 7.4366;
  const double v0 = uehling_uniform(92, R, 1e-6, kC);
  EXPECT_TRUE(std::isfinite(v0));
  EXPECT_LT(v0, 0.0);
  double prev = -INFINITY;
  for (double r = 1e-3; r < 3000.0; r *= 1.25) {
    const double v = uehling_uniform(92, R, r, kC);
    EXPECT_GT(v, prev) << r;
    if (r < R)
      EXPECT_GT(v, uehling_point(92, r, kC)) << r;
    else
      EXPECT_LT(v, uehling_point(92, r, kC)) << r;
    prev = v;
  }
}

TEST(UehlingUniform, LinearInZ) {
  for (double r : {0.5, 7.0, 60.0})
    EXPECT_NEAR(uehling_uniform(80, 7.0, r, kC) / uehling_uniform(1, 7.0, r, kC), 80.0,
                1e-10);
}

//------------------------------------------------------------------------------
// Tables on grids

TEST(UehlingTable, MonotoneAndDeterministic) {
  const auto nuc = NuclearModel::uniform(92, 238.0);
  PncOptions opt;
  opt.grid_points = 2000;
  const auto g = make_pnc_grid(nuc, 2, 2, kC, opt);
  const auto t = uehling_on_grid(92, g, kC);
  for (std::size_t i = 1; i < t.values.size(); ++i)
    ASSERT_GE(t.values[i], t.values[i - 1]);
  const auto again = uehling_on_grid(92, g, kC);
  EXPECT_EQ(t.values, again.values);
}

TEST(UehlingTable, SharedNodesAgree) {
  // Two grids that share every other node.
  const RadialGrid coarse(1e-2, 1e5, 1001);
  const RadialGrid fine(1e-2, 1e5, 2001);
  const auto a = uehling_on_grid(50, coarse, kC);
  const auto b = uehling_on_grid(50, fine, kC);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    ASSERT_NEAR(coarse[i] / fine[2 * i], 1.0, 1e-13);
    if (a.values[i] != 0.0) {
      EXPECT_NEAR(b.values[2 * i] / a.values[i], 1.0, 1e-12) << i;
    }
  }
}

TEST(UehlingTable, NodeAtNuclearRadiusMatchesOracle) {
  const auto nuc = NuclearModel::uniform(92, 238.0);
  const auto g = make_pnc_grid(nuc, 2, 2, kC, PncOptions{});
  const auto t = uehling_on_grid(92, g, kC);
  const auto k = g.find_node(nuc.radius_fm());
  ASSERT_LT(k, g.size());
  EXPECT_NEAR(t.values[k] / uehling_oracle(92, g[k]), 1.0, 1e-8);
}

TEST(UehlingTable, SourceSelection) {
  const auto nuc = NuclearModel::uniform(50, 118.662);
  const RadialGrid g(1e-2, 1e4, 200);
  const auto pt = uehling_on_grid(nuc, g, kC, UehlingSource::point);
  const auto un = uehling_on_grid(nuc, g, kC, UehlingSource::uniform_sphere);
  EXPECT_EQ(pt.values, uehling_on_grid(50, g, kC).values);
  EXPECT_NE(pt.values, un.values);
  EXPECT_EQ(parse_uehling_source("point"), UehlingSource::point);
  EXPECT_EQ(parse_uehling_source("uniform"), UehlingSource::uniform_sphere);
  EXPECT_THROW(parse_uehling_source("fermi"), InputError);
}

//------------------------------------------------------------------------------
// Physics sanity band (no reference value): first-order shift of 1s at Z = 92.

TEST(UehlingShift, UraniumGroundStateBand) {
  const auto nuc = NuclearModel::uniform(92, 238.0);
  const auto g = make_pnc_grid(nuc, 1, 1, kC, PncOptions{});
  const auto s = solve_bound_state(nuc, g, 1, -1, kC);
  for (auto src : {UehlingSource::point, UehlingSource::uniform_sphere}) {
    const auto t = uehling_on_grid(nuc, g, kC, src);
    std::vector<double> d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      d[i] = (s.g[i] * s.g[i] + s.f[i] * s.f[i]) * t.values[i];
    const double shift = integrate_on_grid(g, d).value + origin_tail(g, d);
    EXPECT_LT(shift, -10.0);
    EXPECT_GT(shift, -200.0);
  }
}
