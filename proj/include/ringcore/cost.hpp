#ifndef RINGCORE_COST_HPP
#define RINGCORE_COST_HPP

#include <climits>
#include <cmath>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"

namespace ringcore {

template <typename Point>
using CenterList = std::vector<Point>;

struct Nearest {
  std::size_t center = 0;
  double distance = 0.0;
};

// Nearest center, ties to the lowest center index.
template <MetricSpace M>
Nearest NearestCenter(const M& space, const typename M::point_type& p,
                      const CenterList<typename M::point_type>& centers) {
  if (centers.empty()) throw Error("empty center set");
  Nearest best{0, space.distance(p, centers[0])};
  for (std::size_t j = 1; j < centers.size(); ++j) {
    const double d = space.distance(p, centers[j]);
    if (d < best.distance) best = {j, d};
  }
  return best;
}

// sum_x w(x) * dist(x, C)^z
template <MetricSpace M>
double CostZ(const WeightedPointSet<M>& points, const CenterList<typename M::point_type>& centers,
             double z) {
  if (centers.empty()) throw Error("empty center set");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points.weight(i) == 0.0) continue;
    total += points.weight(i) * PowZ(NearestCenter(points.space(), points.point(i), centers).distance, z);
  }
  return total;
}

template <MetricSpace M>
double CostToCenter(const WeightedPointSet<M>& points, const typename M::point_type& center, double z) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += points.weight(i) * PowZ(points.space().distance(points.point(i), center), z);
  }
  return total;
}

// Ring index of the points at distance 0 from a center.
inline constexpr int kCenterRing = INT_MIN;

// Points this close (relative to 2^i) above the boundary 2^(i-1) are assigned
// to the lower ring.
inline constexpr double kRingSnap = 1e-12;

// The unique i with 2^(i-1) < d <= 2^i, or kCenterRing for d = 0.
inline int RingIndex(double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw Error("ring index needs a finite nonnegative distance");
  if (d == 0.0) return kCenterRing;
  int exp = 0;
  const double mant = std::frexp(d, &exp);  // d = mant * 2^exp, mant in [0.5, 1)
  int i = mant == 0.5 ? exp - 1 : exp;
  if (d - std::ldexp(1.0, i - 1) <= kRingSnap * std::ldexp(1.0, i)) --i;
  return i;
}

inline double RingInner(int i) { return std::ldexp(1.0, i - 1); }

// (cost_z(P, {c}) / w(P))^(1/z)
template <MetricSpace M>
double AvgRadius(const WeightedPointSet<M>& points, const typename M::point_type& center, double z) {
  const double mass = points.total_weight();
  if (!(mass > 0.0)) throw Error("average radius needs positive total weight");
  const double c = CostToCenter(points, center, z);
  return z == 1.0 ? c / mass : std::pow(c / mass, 1.0 / z);
}

}  // namespace ringcore

#endif  // RINGCORE_COST_HPP
