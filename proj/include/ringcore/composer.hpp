#ifndef RINGCORE_COMPOSER_HPP
#define RINGCORE_COMPOSER_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ringcore/bicriteria.hpp"
#include "ringcore/common.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"
#include "ringcore/ring_coreset.hpp"
#include "ringcore/ring_decomp.hpp"

namespace ringcore {

struct ComposerConfig {
  BicriteriaConfig bicriteria;
  BudgetConstants budget;
  double sdim_bound = 0.0;       // 0: the backend's default
  bool k1_reduction = true;      // use the three-point reduction when k = 1
};

struct SizeAccounting {
  std::size_t clusters = 0;
  std::size_t k1_clusters = 0;
  std::size_t center_mass_points = 0;
  std::size_t groups = 0;
  std::size_t two_point_points = 0;
  std::size_t k1_points = 0;
  std::size_t rings_sampled = 0;
  std::size_t ring_input_points = 0;
  std::size_t ring_sample_points = 0;
  std::size_t ring_budget = 0;        // per-ring m before the |R| cap
  std::size_t ring_budget_total = 0;  // sum over rings of min(m, |R|)
  std::size_t accounted_bound = 0;    // #center-mass + 2 #groups + 3 #k1-clusters + ring_budget_total
  double size_bound = 0.0;            // closed-form bound from the parameters alone
  std::size_t size = 0;

  bool within_accounting() const { return size <= accounted_bound; }

  void Merge(const SizeAccounting& o) {
    clusters += o.clusters;
    k1_clusters += o.k1_clusters;
    center_mass_points += o.center_mass_points;
    groups += o.groups;
    two_point_points += o.two_point_points;
    k1_points += o.k1_points;
    rings_sampled += o.rings_sampled;
    ring_input_points += o.ring_input_points;
    ring_sample_points += o.ring_sample_points;
    ring_budget = std::max(ring_budget, o.ring_budget);
    ring_budget_total += o.ring_budget_total;
    accounted_bound += o.accounted_bound;
    size_bound += o.size_bound;
    size += o.size;
  }
};

template <MetricSpace M>
struct CoresetResult {
  WeightedPointSet<M> points;
  std::vector<Origin> provenance;
  CoresetMode mode = CoresetMode::kVanilla;
  ClusteringParams params;
  double alpha_used = 0.0;
  double working_eps = 0.0;
  SampleBudget budget;
  SizeAccounting accounting;
  // cost_z(P, c) for the center of the additive (k = 1) guarantee; 0 otherwise.
  double reference_cost = 0.0;
};

// Closed-form, n-independent bounds on the coreset size.
//   general k: per cluster H m + 2 G + 1 with H = k t (6z/eps)^z heavy rings
//              and G = 2H + H + 1 groups; times k clusters.
//   k = 1:     (ceil(log2(720 z^2 / eps^3)) + 2) m + 3 for the single cluster.
inline double SizeBound(int k, double z, double eps, std::size_t m, bool k1_path) {
  const double md = static_cast<double>(m);
  if (k1_path) return (std::ceil(std::log2(720.0 * z * z / (eps * eps * eps))) + 2.0) * md + 3.0;
  const ReductionParams rp = MakeReductionParams(1.0, k, z, eps);
  const double heavy = 1.0 / rp.err;
  const double groups = 3.0 * heavy + 1.0;
  return static_cast<double>(k) * (heavy * md + 2.0 * groups + 1.0);
}

namespace detail {

struct Emitted {
  PointId id;
  double weight;
  Origin origin;
  std::size_t source;  // position in the set being composed
};

template <MetricSpace M>
struct ClusterOutput {
  std::vector<Emitted> points;
  SizeAccounting accounting;
};

// Reduces one cluster to rings plus an exact part, then samples each ring.
template <MetricSpace M>
ClusterOutput<M> ComposeCluster(const Cluster<M>& cluster, const ClusteringParams& params, double eps,
                                bool k1_path, const SampleBudget& budget, std::uint64_t seed) {
  ClusterOutput<M> out;
  SizeAccounting& acc = out.accounting;
  acc.clusters = 1;
  acc.ring_budget = budget.m;
  const WeightedPointSet<M>& pts = cluster.points;

  std::vector<CoresetEntry> exact;
  std::vector<Ring> rings;
  if (k1_path) {
    const double r = AvgRadius(pts, cluster.center, params.z);
    K1Reduction<M> red = SplitK1(pts, cluster.center, eps, params.z, r);
    exact = std::move(red.s);
    rings = std::move(red.w_rings);
    acc.k1_clusters = 1;
    acc.k1_points = exact.size();
    acc.accounted_bound += 3;
  } else {
    const ReductionParams rp = MakeReductionParams(CostToCenter(pts, cluster.center, params.z), params.k,
                                                   params.z, eps);
    RingDecomposition<M> dec = Decompose(pts, cluster.center, rp);
    exact = std::move(dec.z_coreset);
    for (Ring& ring : dec.rings) {
      if (ring.heavy) rings.push_back(std::move(ring));
    }
    acc.groups = dec.groups.size();
    for (const CoresetEntry& e : exact) {
      if (e.origin == Origin::kCenterMass) ++acc.center_mass_points;
      if (e.origin == Origin::kTwoPoint) ++acc.two_point_points;
    }
    acc.accounted_bound += acc.center_mass_points + 2 * acc.groups;
  }
  for (const CoresetEntry& e : exact) {
    out.points.push_back({pts.id(e.member), e.weight, e.origin, cluster.members[e.member]});
  }

  for (const Ring& ring : rings) {
    WeightedPointSet<M> ring_set = pts.Subset(ring.members);
    const auto ring_seed = DeriveSeed(seed, 0x5a3, static_cast<std::uint64_t>(static_cast<std::int64_t>(ring.index)));
    WeightedPointSet<M> sample = UniformRingCoreset(ring_set, cluster.center, ring.inner_radius(), budget, ring_seed);
    // Map sampled handles back to cluster positions (both lists follow input order).
    std::size_t cursor = 0;
    for (std::size_t s = 0; s < sample.size(); ++s) {
      while (ring_set.id(cursor) != sample.id(s)) ++cursor;
      out.points.push_back({sample.id(s), sample.weight(s), Origin::kRingSample, cluster.members[ring.members[cursor]]});
    }
    ++acc.rings_sampled;
    acc.ring_input_points += ring.members.size();
    acc.ring_sample_points += sample.size();
    acc.ring_budget_total += budget.CappedTo(ring.members.size());
  }
  acc.accounted_bound += acc.ring_budget_total;
  acc.size = out.points.size();
  return out;
}

template <MetricSpace M>
CoresetResult<M> Assemble(const WeightedPointSet<M>& input, std::vector<Emitted> emitted, CoresetMode mode,
                          const ClusteringParams& params, double alpha, double eps_w, const SampleBudget& budget,
                          SizeAccounting accounting) {
  std::sort(emitted.begin(), emitted.end(), [](const Emitted& a, const Emitted& b) { return a.source < b.source; });
  std::vector<PointId> ids;
  std::vector<double> weights;
  std::vector<GroupLabels> labels;
  std::vector<Origin> provenance;
  for (const Emitted& e : emitted) {
    ids.push_back(e.id);
    weights.push_back(e.weight);
    provenance.push_back(e.origin);
    if (input.has_labels()) labels.push_back(input.labels(e.source));
  }
  CoresetResult<M> result{WeightedPointSet<M>(input.space(), std::move(ids), std::move(weights), std::move(labels)),
                          std::move(provenance), mode, params, alpha, eps_w, budget, accounting, 0.0};
  result.accounting.size = result.points.size();
  const double w_in = input.total_weight(), w_out = result.points.total_weight();
  if (std::abs(w_in - w_out) > 1e-9 * w_in) throw Error("coreset does not conserve total weight");
  if (!result.accounting.within_accounting()) throw Error("coreset size exceeds its accounting");
  return result;
}

}  // namespace detail

// Relative-error coreset: bicriteria partition, per-cluster ring reduction
// with eps / (alpha + 1), uniform samples of every ring in W, and the union
// of samples, two-point coresets and center-mass points. Output follows the
// input order.
template <MetricSpace M>
CoresetResult<M> BuildCoreset(const WeightedPointSet<M>& points, const ClusteringParams& params, CoresetMode mode,
                              const ComposerConfig& config = {}) {
  params.Validate();
  if (!(points.total_weight() > 0.0)) throw ConfigError("point set has no mass");
  const BicriteriaResult<M> bic = BicriteriaApprox(points, params, config.bicriteria);
  const std::vector<Cluster<M>> clusters = ClusterPartition(points, bic);
  const double alpha = bic.alpha_budget;
  const double eps_w = params.eps / (alpha + 1.0);
  const double sdim = config.sdim_bound > 0.0 ? config.sdim_bound : points.space().default_sdim();
  const SampleBudget budget = MakeSampleBudget(params.k, eps_w, params.delta, mode, sdim, config.budget);
  const bool k1_path = params.k == 1 && config.k1_reduction;

  std::vector<detail::ClusterOutput<M>> outputs(clusters.size());
  ParallelFor(clusters.size(), [&](std::size_t c) {
    outputs[c] = detail::ComposeCluster(clusters[c], params, eps_w, k1_path, budget, DeriveSeed(params.seed, 0xc1, c));
  });

  std::vector<detail::Emitted> emitted;
  SizeAccounting accounting;
  for (auto& o : outputs) {
    emitted.insert(emitted.end(), o.points.begin(), o.points.end());
    accounting.Merge(o.accounting);
  }
  accounting.ring_budget = budget.m;
  accounting.size_bound = SizeBound(params.k, params.z, eps_w, budget.m, k1_path);
  return detail::Assemble(points, std::move(emitted), mode, params, alpha, eps_w, budget, accounting);
}

// One part per distinct group-membership signature.
struct FairPartition {
  std::vector<GroupLabels> signatures;
  std::vector<std::vector<std::size_t>> parts;

  std::size_t delta() const { return parts.size(); }
};

template <MetricSpace M>
FairPartition PartitionBySignature(const WeightedPointSet<M>& points) {
  if (!points.has_labels()) throw ConfigError("fair coreset needs group labels");
  std::map<GroupLabels, std::vector<std::size_t>> by_signature;
  for (std::size_t i = 0; i < points.size(); ++i) {
    GroupLabels sig = points.labels(i);
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    by_signature[sig].push_back(i);
  }
  FairPartition fp;
  for (auto& [sig, members] : by_signature) {
    fp.signatures.push_back(sig);
    fp.parts.push_back(std::move(members));
  }
  return fp;
}

template <MetricSpace M>
struct FairCoresetResult {
  CoresetResult<M> coreset;
  FairPartition partition;
  std::vector<double> part_weights;          // w(P^(i))
  std::vector<double> part_coreset_weights;  // w(S^(i))
};

// Assignment-preserving coreset per signature part, unioned. A single part
// reuses the caller's seed, so it reproduces BuildCoreset exactly.
template <MetricSpace M>
FairCoresetResult<M> BuildFairCoreset(const WeightedPointSet<M>& points, const ClusteringParams& params,
                                      const ComposerConfig& config = {}) {
  params.Validate();
  FairPartition partition = PartitionBySignature(points);
  const std::size_t delta = partition.delta();
  std::vector<WeightedPointSet<M>> parts;
  for (const auto& members : partition.parts) parts.push_back(points.Subset(members));

  std::vector<CoresetResult<M>> built;
  built.reserve(delta);
  for (std::size_t i = 0; i < delta; ++i) {
    ClusteringParams part_params = params;
    if (delta > 1) part_params.seed = DeriveSeed(params.seed, 0xfa17, i);
    built.push_back(BuildCoreset(parts[i], part_params, CoresetMode::kAssignmentPreserving, config));
  }

  std::vector<detail::Emitted> emitted;
  SizeAccounting accounting;
  std::vector<double> part_weights, part_coreset_weights;
  for (std::size_t i = 0; i < delta; ++i) {
    const CoresetResult<M>& r = built[i];
    std::size_t cursor = 0;
    for (std::size_t s = 0; s < r.points.size(); ++s) {
      while (parts[i].id(cursor) != r.points.id(s)) ++cursor;
      emitted.push_back({r.points.id(s), r.points.weight(s), r.provenance[s], partition.parts[i][cursor]});
    }
    accounting.Merge(r.accounting);
    part_weights.push_back(parts[i].total_weight());
    part_coreset_weights.push_back(r.points.total_weight());
  }
  const CoresetResult<M>& first = built.front();
  CoresetResult<M> merged = detail::Assemble(points, std::move(emitted), CoresetMode::kAssignmentPreserving, params,
                                             first.alpha_used, first.working_eps, first.budget, accounting);
  return {std::move(merged), std::move(partition), std::move(part_weights), std::move(part_coreset_weights)};
}

// (eps, cost(P, c))-coreset for the 1-median of l-tuples under the
// p-Wasserstein distance: c is the best of 3 ceil(log2(1/delta)) sampled data
// tuples, the three-point reduction splits off W, and every W ring is sampled
// with the shattering-dimension budget (d + 2) l, which does not involve p.
inline CoresetResult<WassersteinSpace> BuildBarycenterCoreset(const WeightedPointSet<WassersteinSpace>& tuples,
                                                              const ClusteringParams& params,
                                                              const ComposerConfig& config = {}) {
  params.Validate();
  if (params.k != 1) throw ConfigError("barycenter coresets need k = 1");
  if (!(tuples.total_weight() > 0.0)) throw ConfigError("point set has no mass");
  const WassersteinSpace& space = tuples.space();

  BicriteriaConfig pick = config.bicriteria;
  pick.repetitions = 3 * static_cast<int>(LogFactor(1.0 / params.delta));
  pick.max_swaps = 0;
  pick.alpha_budget = 1.0;
  const BicriteriaResult<WassersteinSpace> bic = BicriteriaApprox(tuples, params, pick);
  const std::vector<Cluster<WassersteinSpace>> clusters = ClusterPartition(tuples, bic);

  const double sdim = config.sdim_bound > 0.0 ? config.sdim_bound : space.default_sdim();
  const SampleBudget budget =
      MakeSampleBudget(1, params.eps, params.delta, CoresetMode::kVanilla, sdim, config.budget);
  detail::ClusterOutput<WassersteinSpace> out =
      detail::ComposeCluster(clusters.front(), params, params.eps, true, budget, DeriveSeed(params.seed, 0xc1, 0));
  SizeAccounting accounting = out.accounting;
  accounting.size_bound = SizeBound(1, params.z, params.eps, budget.m, true);
  CoresetResult<WassersteinSpace> result = detail::Assemble(tuples, std::move(out.points), CoresetMode::kVanilla,
                                                            params, 0.0, params.eps, budget, accounting);
  result.reference_cost = bic.cost;
  return result;
}

}  // namespace ringcore

#endif  // RINGCORE_COMPOSER_HPP
