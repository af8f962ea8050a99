#ifndef RINGCORE_BICRITERIA_HPP
#define RINGCORE_BICRITERIA_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"

namespace ringcore {

// Default approximation factor handed to the composer: 16 for z = 1,
// 64 for z = 2, 4^(z+1) in general.
inline double DefaultAlphaBudget(double z) { return std::pow(4.0, z + 1.0); }

struct BicriteriaConfig {
  int repetitions = 0;        // 0: max(1, ceil(log2(1/delta)))
  int max_swaps = -1;         // -1: 2k
  double alpha_budget = 0.0;  // 0: DefaultAlphaBudget(z)
};

template <MetricSpace M>
struct BicriteriaResult {
  CenterList<typename M::point_type> centers;
  std::vector<PointId> center_ids;
  double alpha_budget = 0.0;
  std::vector<std::size_t> assignment;  // nearest center per point
  std::vector<double> cluster_cost;     // cost_z(P_i, {c_i})
  double cost = 0.0;
  std::size_t repetition = 0;
  std::vector<double> seeding_costs;  // cost after each seeding step of the kept run
};

template <MetricSpace M>
struct Cluster {
  WeightedPointSet<M> points;
  typename M::point_type center;
  PointId center_id;
  std::vector<std::size_t> members;  // positions in the partitioned set
};

namespace detail {

template <MetricSpace M>
struct SeedingRun {
  std::vector<std::size_t> centers;   // positions in P
  std::vector<std::vector<double>> columns;  // dist^z from every point to each center
  std::vector<double> nearest;        // min over columns
  std::vector<double> costs;
  double cost = 0.0;
};

template <MetricSpace M>
std::vector<double> PowColumn(const WeightedPointSet<M>& points, std::size_t center, double z) {
  std::vector<double> col(points.size());
  const auto& c = points.point(center);
  for (std::size_t i = 0; i < points.size(); ++i) col[i] = PowZ(points.space().distance(points.point(i), c), z);
  return col;
}

inline double WeightedSum(const std::vector<double>& w, const std::vector<double>& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * d[i];
  return s;
}

inline std::vector<double> Cumulative(const std::vector<double>& w, const std::vector<double>* d) {
  std::vector<double> cum(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += d ? w[i] * (*d)[i] : w[i];
    cum[i] = s;
  }
  return cum;
}

// D^z seeding followed by sampled single-swap local search.
template <MetricSpace M>
SeedingRun<M> SeedAndSwap(const WeightedPointSet<M>& points, int k, double z, int max_swaps, Rng& rng) {
  const auto& w = points.weights();
  const std::size_t n = points.size();
  SeedingRun<M> run;
  run.nearest.assign(n, std::numeric_limits<double>::infinity());

  auto add = [&](std::size_t idx) {
    run.centers.push_back(idx);
    run.columns.push_back(PowColumn(points, idx, z));
    const auto& col = run.columns.back();
    for (std::size_t i = 0; i < n; ++i) run.nearest[i] = std::min(run.nearest[i], col[i]);
    run.cost = WeightedSum(w, run.nearest);
    run.costs.push_back(run.cost);
  };

  add(SampleProportional(Cumulative(w, nullptr), rng));
  while (static_cast<int>(run.centers.size()) < k && run.cost > 0.0) {
    add(SampleProportional(Cumulative(w, &run.nearest), rng));
  }

  const std::size_t kc = run.centers.size();
  for (int s = 0; s < max_swaps && run.cost > 0.0 && kc > 0; ++s) {
    const std::size_t cand = SampleProportional(Cumulative(w, &run.nearest), rng);
    std::vector<double> cand_col = PowColumn(points, cand, z);
    // Best and second-best center per point.
    std::vector<std::size_t> first(n, 0);
    std::vector<double> best(n), second(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = run.columns[0][i];
      for (std::size_t j = 1; j < kc; ++j) {
        const double d = run.columns[j][i];
        if (d < best[i]) {
          second[i] = best[i];
          best[i] = d;
          first[i] = j;
        } else if (d < second[i]) {
          second[i] = d;
        }
      }
    }
    double best_cost = run.cost;
    std::ptrdiff_t out = -1;
    for (std::size_t j = 0; j < kc; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double other = first[i] == j ? second[i] : best[i];
        c += w[i] * std::min(cand_col[i], other);
      }
      if (c < best_cost * (1.0 - 1e-12)) {
        best_cost = c;
        out = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (out < 0) continue;
    run.centers[static_cast<std::size_t>(out)] = cand;
    run.columns[static_cast<std::size_t>(out)] = std::move(cand_col);
    for (std::size_t i = 0; i < n; ++i) {
      double m = run.columns[0][i];
      for (std::size_t j = 1; j < kc; ++j) m = std::min(m, run.columns[j][i]);
      run.nearest[i] = m;
    }
    run.cost = WeightedSum(w, run.nearest);
  }
  return run;
}

}  // namespace detail

// (alpha, 1)-bicriteria approximation: repeated D^z seeding, keeping the
// cheapest run, then up to max_swaps sampled center swaps. Centers are data
// points; with fewer than k distinct points every distinct point becomes a
// center and the cost is 0.
template <MetricSpace M>
BicriteriaResult<M> BicriteriaApprox(const WeightedPointSet<M>& points, const ClusteringParams& params,
                                     const BicriteriaConfig& config = {}) {
  params.Validate();
  if (!(points.total_weight() > 0.0)) throw Error("bicriteria needs positive total weight");
  const int reps = config.repetitions > 0
                       ? config.repetitions
                       : std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / params.delta))));
  const int swaps = config.max_swaps >= 0 ? config.max_swaps : 2 * params.k;

  std::vector<detail::SeedingRun<M>> runs(static_cast<std::size_t>(reps));
  ParallelFor(runs.size(), [&](std::size_t r) {
    Rng rng(DeriveSeed(params.seed, 0xb1c, r));
    runs[r] = detail::SeedAndSwap(points, params.k, params.z, swaps, rng);
  });
  std::size_t kept = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].cost < runs[kept].cost) kept = r;
  }
  const auto& run = runs[kept];

  BicriteriaResult<M> result;
  result.alpha_budget = config.alpha_budget > 0.0 ? config.alpha_budget : DefaultAlphaBudget(params.z);
  result.repetition = kept;
  result.seeding_costs = run.costs;
  for (std::size_t idx : run.centers) {
    result.centers.push_back(points.point(idx));
    result.center_ids.push_back(points.id(idx));
  }
  const std::size_t kc = run.centers.size();
  result.assignment.assign(points.size(), 0);
  result.cluster_cost.assign(kc, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < kc; ++j) {
      if (run.columns[j][i] < run.columns[arg][i]) arg = j;
    }
    result.assignment[i] = arg;
    result.cluster_cost[arg] += points.weight(i) * run.columns[arg][i];
  }
  for (double c : result.cluster_cost) result.cost += c;
  return result;
}

// {P_i}: the points whose nearest bicriteria center is c_i. Clusters without
// points are dropped.
template <MetricSpace M>
std::vector<Cluster<M>> ClusterPartition(const WeightedPointSet<M>& points, const BicriteriaResult<M>& result) {
  if (result.assignment.size() != points.size()) throw Error("bicriteria result does not match the point set");
  std::vector<std::vector<std::size_t>> members(result.centers.size());
  for (std::size_t i = 0; i < points.size(); ++i) members[result.assignment[i]].push_back(i);
  std::vector<Cluster<M>> clusters;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (members[j].empty()) continue;
    clusters.push_back({points.Subset(members[j]), result.centers[j], result.center_ids[j], std::move(members[j])});
  }
  return clusters;
}

}  // namespace ringcore

#endif  // RINGCORE_BICRITERIA_HPP
