#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hcipnc/error.hpp"

namespace hcipnc {

//******************************************************************************
//! Exponentially spaced radial mesh, r_i = r_min exp(i h), in fm.
/*! First and last points equal r_min and r_max exactly. Optionally one
    interior point is pinned to a given radius (the nuclear surface), so that
    the kink of the interior potential and the edge of the nuclear density
    fall on a node.
*/
class RadialGrid {
public:
  RadialGrid() = default;

  RadialGrid(double r_min, double r_max, std::size_t n) {
    if (!(r_min > 0.0) || !(r_max > r_min))
      throw InputError("RadialGrid: need 0 < r_min < r_max");
    if (n < 16)
      throw InputError("RadialGrid: need at least 16 points");
    h_ = std::log(r_max / r_min) / double(n - 1);
    r_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      r_[i] = r_min * std::exp(double(i) * h_);
    r_.front() = r_min;
    r_.back() = r_max;
  }

  /// Grid with n points ending at r_max, with a node placed exactly on
  /// r_node and r_min as close to r_min_hint as the spacing allows.
  static RadialGrid through(double r_min_hint, double r_max, std::size_t n,
                            double r_node) {
    if (!(r_min_hint > 0.0) || !(r_node > r_min_hint) || !(r_max > r_node))
      throw InputError("RadialGrid::through: need 0 < r_min < r_node < r_max");
    if (n < 16)
      throw InputError("RadialGrid: need at least 16 points");
    const double total = std::log(r_max / r_min_hint);
    const double inner = std::log(r_node / r_min_hint);
    auto k = std::size_t(std::lround(inner / total * double(n - 1)));
    k = std::clamp<std::size_t>(k, 1, n - 2);
    RadialGrid g;
    g.h_ = std::log(r_max / r_node) / double(n - 1 - k);
    g.r_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      g.r_[i] = r_node * std::exp((double(i) - double(k)) * g.h_);
    g.r_[k] = r_node;
    g.r_.back() = r_max;
    return g;
  }

  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  double r(std::size_t i) const { return r_[i]; }
  std::span<const double> points() const { return r_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  /// Spacing in ln r.
  double log_step() const { return h_; }
  /// Radius halfway (in ln r) between nodes i and i+1.
  double midpoint(std::size_t i) const { return r_[i] * std::exp(0.5 * h_); }

  /// Largest i with r_i <= r (0 if r < r_min).
  std::size_t index_below(double r) const {
    const auto it = std::upper_bound(r_.begin(), r_.end(), r);
    return it == r_.begin() ? 0 : std::size_t(it - r_.begin()) - 1;
  }

  /// Index of the node equal to r within relative tolerance, or size().
  std::size_t find_node(double r, double rtol = 1e-12) const {
    const auto i = index_below(r * (1.0 + rtol));
    return std::abs(r_[i] - r) <= rtol * r ? i : size();
  }

  bool same_as(const RadialGrid &other) const { return r_ == other.r_; }

private:
  std::vector<double> r_;
  double h_ = 0.0;
};

inline RadialGrid make_grid(double r_min, double r_max, std::size_t n) {
  return {r_min, r_max, n};
}

} // namespace hcipnc
