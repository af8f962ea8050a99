#ifndef RINGCORE_RING_CORESET_HPP
#define RINGCORE_RING_CORESET_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"

namespace ringcore {

enum class CoresetMode { kVanilla, kAssignmentPreserving };
enum class BudgetForm { kEps5, kEps3WithDim };

inline const char* ModeName(CoresetMode m) {
  return m == CoresetMode::kVanilla ? "vanilla" : "assignment_preserving";
}
inline const char* BudgetFormName(BudgetForm f) { return f == BudgetForm::kEps5 ? "eps5" : "eps3_with_dim"; }

// Leading constants hidden by the O~ of the sample-size bounds.
struct BudgetConstants {
  double c0 = 8.0;  // assignment-preserving form
  double c1 = 8.0;  // shattering-dimension form
  BudgetForm form = BudgetForm::kEps5;
};

struct SampleBudget {
  CoresetMode mode = CoresetMode::kVanilla;
  double raw = 0.0;    // formula value before rounding / capping
  std::size_t m = 1;   // ceil(raw), at least 1
  int k = 1;
  double eps = 0.0;
  double delta = 0.0;
  double sdim = 0.0;
  BudgetConstants constants;

  std::size_t CappedTo(std::size_t ring_size) const { return std::min(m, ring_size); }
};

// max(1, ceil(log2 x)): every log factor in the budgets is rounded up to an
// integer so that halving delta adds exactly one increment.
inline double LogFactor(double x) { return std::max(1.0, std::ceil(std::log2(x))); }

//   assignment-preserving, eps5:   c0 * (k / eps^5) * L(k/eps) * L(1/delta)
//   assignment-preserving, eps3:   c0 * (k / eps^3) * L(k/eps)^2 * L(1/delta)
//   vanilla:                       c1 * eps^-2 * k * sdim * L(1/eps) * L(1/delta)
inline SampleBudget MakeSampleBudget(int k, double eps, double delta, CoresetMode mode, double sdim_bound,
                                     const BudgetConstants& constants = {}) {
  SampleBudget b;
  b.mode = mode;
  b.k = k;
  b.eps = eps;
  b.delta = delta;
  b.sdim = sdim_bound;
  b.constants = constants;
  const double kd = static_cast<double>(k);
  if (mode == CoresetMode::kAssignmentPreserving) {
    if (constants.form == BudgetForm::kEps5) {
      b.raw = constants.c0 * (kd / std::pow(eps, 5)) * LogFactor(kd / eps) * LogFactor(1.0 / delta);
    } else {
      const double l = LogFactor(kd / eps);
      b.raw = constants.c0 * (kd / std::pow(eps, 3)) * l * l * LogFactor(1.0 / delta);
    }
  } else {
    b.raw = constants.c1 * kd * sdim_bound * LogFactor(1.0 / eps) * LogFactor(1.0 / delta) / (eps * eps);
  }
  constexpr double kHuge = 1e15;
  b.m = static_cast<std::size_t>(std::max(1.0, std::ceil(std::min(b.raw, kHuge))));
  return b;
}

// Uniform (weight-proportional, with replacement) sample of a ring dataset
// R within ring(c, r, 2r). Every draw carries w(R) / m; repeated draws of the
// same point are merged. With m >= |R| the ring itself is returned.
template <MetricSpace M>
WeightedPointSet<M> UniformRingCoreset(const WeightedPointSet<M>& ring, const typename M::point_type& center,
                                       double inner_radius, const SampleBudget& budget, std::uint64_t seed) {
  constexpr double kSlack = 1e-9;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const double d = ring.space().distance(ring.point(i), center);
    if (!(d > inner_radius * (1.0 - kSlack) && d <= 2.0 * inner_radius * (1.0 + kSlack))) {
      throw Error("not a ring dataset");
    }
  }
  if (budget.m >= ring.size()) return ring;

  const std::size_t m = budget.m;
  std::vector<double> cumulative(ring.size());
  double s = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    s += ring.weight(i);
    cumulative[i] = s;
  }
  if (!(s > 0.0)) return ring;
  Rng rng(seed);
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t draw = 0; draw < m; ++draw) ++counts[SampleProportional(cumulative, rng)];

  std::vector<PointId> ids;
  std::vector<double> weights;
  std::vector<GroupLabels> labels;
  const double total = ring.total_weight();
  for (const auto& [idx, count] : counts) {
    ids.push_back(ring.id(idx));
    weights.push_back(static_cast<double>(count) * total / static_cast<double>(m));
    if (ring.has_labels()) labels.push_back(ring.labels(idx));
  }
  return WeightedPointSet<M>(ring.space(), std::move(ids), std::move(weights), std::move(labels));
}

}  // namespace ringcore

#endif  // RINGCORE_RING_CORESET_HPP
