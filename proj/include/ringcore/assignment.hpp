#ifndef RINGCORE_ASSIGNMENT_HPP
#define RINGCORE_ASSIGNMENT_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"
#include "ringcore/transport.hpp"

namespace ringcore {

// Prescribed mass per center; must sum to the total weight of the point set
// it is paired with.
template <typename Point>
struct AssignmentConstraint {
  CenterList<Point> centers;
  std::vector<double> masses;

  double total() const { return std::accumulate(masses.begin(), masses.end(), 0.0); }
};

// Sparse fractional assignment sigma(point, center) with its cost.
struct TransportPlan {
  struct Entry {
    std::size_t point = 0;
    std::size_t center = 0;
    double mass = 0.0;
  };

  std::vector<Entry> entries;
  double objective = 0.0;

  std::string ToCsv() const {
    std::ostringstream out;
    out.precision(17);
    out << "point,center,mass\n";
    for (const Entry& e : entries) out << e.point << ',' << e.center << ',' << e.mass << '\n';
    return out.str();
  }
};

struct TransportOptions {
  // Dense simplex up to this many point x center cells, shortest paths above.
  std::size_t dense_cell_limit = 1'000'000;
  // Constraints within this relative distance of w(P) are renormalized.
  double mass_tolerance = 1e-6;
};

// cost_z(P, C, Gamma): the cheapest fractional assignment of P's mass to the
// centers that delivers exactly Gamma(c) to every center c.
template <MetricSpace M>
TransportPlan SolveTransport(const WeightedPointSet<M>& points,
                             const AssignmentConstraint<typename M::point_type>& gamma, double z,
                             const TransportOptions& options = {}) {
  const std::size_t n = points.size(), k = gamma.centers.size();
  if (k == 0) throw Error("empty center set");
  if (gamma.masses.size() != k) throw Error("constraint masses and centers differ in length");
  for (double m : gamma.masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw Error("constraint masses must be nonnegative");
  }
  const double supply = points.total_weight();
  const double demand = gamma.total();
  if (!(std::abs(demand - supply) <= options.mass_tolerance * supply) || !(supply > 0.0)) {
    throw Error("mass mismatch");
  }

  transport::Problem problem;
  problem.supply = points.weights();
  problem.demand = gamma.masses;
  if (demand != supply) {
    for (double& d : problem.demand) d *= supply / demand;
  }
  problem.cost.resize(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      problem.cost[i * k + j] = PowZ(points.space().distance(points.point(i), gamma.centers[j]), z);
    }
  }

  const transport::Solution solution = n * k <= options.dense_cell_limit
                                           ? transport::Simplex(problem).Solve()
                                           : transport::ShortestPaths(problem).Solve();
  TransportPlan plan;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double x = solution.flow[i * k + j];
      if (x > 0.0) plan.entries.push_back({i, j, x});
    }
  }
  plan.objective = solution.objective;
  return plan;
}

// Gamma(c) = weight of the points whose nearest center is c.
template <MetricSpace M>
AssignmentConstraint<typename M::point_type> InducedConstraint(
    const WeightedPointSet<M>& points, const CenterList<typename M::point_type>& centers) {
  if (centers.empty()) throw Error("empty center set");
  AssignmentConstraint<typename M::point_type> gamma{centers, std::vector<double>(centers.size(), 0.0)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    gamma.masses[NearestCenter(points.space(), points.point(i), centers).center] += points.weight(i);
  }
  return gamma;
}

// Symmetric Dirichlet(1) masses scaled to `total`.
template <typename Point>
AssignmentConstraint<Point> RandomConstraint(const CenterList<Point>& centers, double total,
                                             std::uint64_t seed) {
  if (!(total > 0.0)) throw Error("constraint total must be positive");
  if (centers.empty()) throw Error("empty center set");
  Rng rng(seed);
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> masses(centers.size());
  double sum = 0.0;
  for (double& m : masses) {
    m = draw(rng);
    sum += m;
  }
  for (double& m : masses) m = m / sum * total;
  return {centers, std::move(masses)};
}

}  // namespace ringcore

#endif  // RINGCORE_ASSIGNMENT_HPP
