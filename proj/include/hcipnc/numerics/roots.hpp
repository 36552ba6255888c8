#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include <boost/math/tools/toms748_solve.hpp>

#include "hcipnc/error.hpp"

namespace hcipnc {

/// Root of f on [lo, hi] to |delta| <= tol (TOMS 748).
inline double find_root_bracketed(const std::function<double(double)> &f,
                                  double lo, double hi, double tol,
                                  std::uintmax_t max_iter = 200) {
  if (!(lo < hi))
    throw InputError("find_root_bracketed: need lo < hi");
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0)
    return lo;
  if (fhi == 0.0)
    return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw InputError("find_root_bracketed: no sign change on [lo, hi]");
  const auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  std::uintmax_t iters = max_iter;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iters);
  const double mid = 0.5 * (a + b);
  if (std::abs(b - a) > tol)
    throw ConvergenceError("find_root_bracketed: iteration limit", mid,
                           std::abs(b - a));
  return mid;
}

} // namespace hcipnc
