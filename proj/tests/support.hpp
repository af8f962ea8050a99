#ifndef RINGCORE_TESTS_SUPPORT_HPP
#define RINGCORE_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "ringcore/ringcore.hpp"

namespace ringcore::testing {

using Points = WeightedPointSet<EuclideanSpace>;

inline EuclideanSpace Line(const std::vector<double>& xs) {
  std::vector<Vec> pts;
  for (double x : xs) pts.push_back({x});
  return EuclideanSpace(1, std::move(pts));
}

inline std::vector<Vec> RandomPoints(std::size_t n, std::size_t dim, std::uint64_t seed, double scale = 10.0) {
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  std::vector<Vec> pts(n, Vec(dim));
  for (Vec& p : pts) {
    for (double& x : p) x = g(rng);
  }
  return pts;
}

inline std::vector<double> RandomWeights(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  std::vector<double> w(n);
  for (double& x : w) x = u(rng);
  return w;
}

inline std::vector<PointId> Handles(std::size_t n) {
  std::vector<PointId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = PointId{i};
  return ids;
}

inline bool RelClose(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Naive double loop, independent of CostZ.
template <MetricSpace M>
double NaiveCost(const WeightedPointSet<M>& p, const CenterList<typename M::point_type>& c, double z) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double best = INFINITY;
    for (const auto& center : c) best = std::min(best, p.space().distance(p.point(i), center));
    total += p.weight(i) * std::pow(best, z);
  }
  return total;
}

}  // namespace ringcore::testing

#endif  // RINGCORE_TESTS_SUPPORT_HPP
