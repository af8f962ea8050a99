#ifndef RINGCORE_RING_DECOMP_HPP
#define RINGCORE_RING_DECOMP_HPP

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"

// Reduction of one cluster (P, c) to a union of dyadic rings W around c plus
// an exact small coreset for everything else. Member indices in this header
// are positions inside the cluster's WeightedPointSet.

namespace ringcore {

enum class Origin { kTwoPoint, kRingSample, kCenterMass };

inline const char* OriginName(Origin o) {
  switch (o) {
    case Origin::kTwoPoint: return "two-point";
    case Origin::kRingSample: return "ring-sample";
    case Origin::kCenterMass: return "center-mass";
  }
  return "?";
}

struct CoresetEntry {
  std::size_t member = 0;
  double weight = 0.0;
  Origin origin = Origin::kTwoPoint;
};

struct ReductionParams {
  int t = 0;
  double err = 0.0;
  double cost = 0.0;  // cost_z(P, {c})
  int k = 1;
  double z = 1.0;
  double eps = 0.0;
};

// t = ceil(2 + log2(24 z k / eps)), err = (eps / 6z)^z * cost / (k t).
inline ReductionParams MakeReductionParams(double cost, int k, double z, double eps) {
  ReductionParams rp;
  rp.k = k;
  rp.z = z;
  rp.eps = eps;
  rp.cost = cost;
  rp.t = static_cast<int>(std::ceil(2.0 + std::log2(24.0 * z * k / eps)));
  rp.err = std::pow(eps / (6.0 * z), z) * cost / (static_cast<double>(k) * rp.t);
  return rp;
}

template <MetricSpace M>
ReductionParams MakeReductionParams(const WeightedPointSet<M>& points, const typename M::point_type& center,
                                    const ClusteringParams& params) {
  return MakeReductionParams(CostToCenter(points, center, params.z), params.k, params.z, params.eps);
}

struct Ring {
  int index = 0;
  std::vector<std::size_t> members;
  double cost = 0.0;
  double weight = 0.0;
  bool heavy = false;

  double inner_radius() const { return RingInner(index); }
};

struct Group {
  int lo = 0;
  int hi = 0;
  std::vector<std::size_t> members;
  double cost = 0.0;
  double weight = 0.0;
};

struct TwoPointCoreset {
  std::size_t close = 0;
  std::size_t far = 0;
  double w_close = 0.0;
  double w_far = 0.0;
};

template <MetricSpace M>
struct RingDecomposition {
  typename M::point_type center;
  ReductionParams params;
  std::vector<double> distances;     // per member, to the center
  std::vector<std::size_t> at_center;
  std::vector<Ring> rings;           // nonempty rings, increasing index
  std::size_t bucket_count = 0;
  std::vector<Group> groups;
  std::vector<TwoPointCoreset> two_point;  // parallel to groups
  std::vector<CoresetEntry> z_coreset;     // S_Z

  std::size_t heavy_count() const {
    std::size_t h = 0;
    for (const Ring& r : rings) h += r.heavy ? 1 : 0;
    return h;
  }
};

namespace detail {

// Closest / furthest member to the center (ties to the lowest member index)
// reweighted so that weight and cost-to-center are both preserved.
inline TwoPointCoreset MakeTwoPoint(const std::vector<std::size_t>& members, const std::vector<double>& distances,
                                    const std::vector<double>& weights, double z) {
  TwoPointCoreset tp;
  tp.close = tp.far = members.front();
  for (std::size_t m : members) {
    if (distances[m] < distances[tp.close] || (distances[m] == distances[tp.close] && m < tp.close)) tp.close = m;
    if (distances[m] > distances[tp.far] || (distances[m] == distances[tp.far] && m < tp.far)) tp.far = m;
  }
  double total = 0.0;
  for (std::size_t m : members) total += weights[m];
  const double d_close = PowZ(distances[tp.close], z), d_far = PowZ(distances[tp.far], z);
  if (tp.close == tp.far || !(d_far > d_close)) {
    tp.far = tp.close;
    tp.w_close = total;
    tp.w_far = 0.0;
    return tp;
  }
  double w_close = 0.0;
  for (std::size_t m : members) {
    double lambda = (d_far - PowZ(distances[m], z)) / (d_far - d_close);
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12) throw Error("convex coefficient outside [0, 1]");
    lambda = std::clamp(lambda, 0.0, 1.0);
    w_close += lambda * weights[m];
  }
  tp.w_close = w_close;
  tp.w_far = total - w_close;
  return tp;
}

inline void AppendTwoPoint(const TwoPointCoreset& tp, std::vector<CoresetEntry>& out) {
  if (tp.w_close > 0.0) out.push_back({tp.close, tp.w_close, Origin::kTwoPoint});
  if (tp.far != tp.close && tp.w_far > 0.0) out.push_back({tp.far, tp.w_far, Origin::kTwoPoint});
}

// Groups the members by ring index; members at distance 0 are skipped.
inline std::vector<Ring> BuildRings(const std::vector<std::size_t>& members, const std::vector<double>& distances,
                                    const std::vector<double>& weights, double z) {
  std::map<int, Ring> by_index;
  for (std::size_t m : members) {
    const int idx = RingIndex(distances[m]);
    if (idx == kCenterRing) continue;
    Ring& r = by_index[idx];
    r.index = idx;
    r.members.push_back(m);
    r.cost += weights[m] * PowZ(distances[m], z);
    r.weight += weights[m];
  }
  std::vector<Ring> rings;
  rings.reserve(by_index.size());
  for (auto& [idx, ring] : by_index) rings.push_back(std::move(ring));
  return rings;
}

template <MetricSpace M>
std::vector<double> DistancesTo(const WeightedPointSet<M>& points, const typename M::point_type& center) {
  std::vector<double> d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d[i] = points.space().distance(points.point(i), center);
  return d;
}

}  // namespace detail

// Rings P_i = P cap ring(c, 2^(i-1), 2^i); rings with cost >= err are heavy
// (W). Runs of consecutive unmarked rings (buckets) are grouped greedily by
// whole rings while the group cost stays <= err; each group is replaced by
// its two-point coreset. Points at c form a single center-mass entry.
template <MetricSpace M>
RingDecomposition<M> Decompose(const WeightedPointSet<M>& points, const typename M::point_type& center,
                               const ReductionParams& rp) {
  RingDecomposition<M> dec;
  dec.center = center;
  dec.params = rp;
  dec.distances = detail::DistancesTo(points, center);
  const auto& w = points.weights();

  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  double center_mass = 0.0;
  for (std::size_t i : all) {
    if (dec.distances[i] == 0.0) {
      dec.at_center.push_back(i);
      center_mass += w[i];
    }
  }
  if (!dec.at_center.empty() && center_mass > 0.0) {
    dec.z_coreset.push_back({dec.at_center.front(), center_mass, Origin::kCenterMass});
  }

  dec.rings = detail::BuildRings(all, dec.distances, w, rp.z);
  for (Ring& r : dec.rings) r.heavy = r.cost >= rp.err;

  bool in_bucket = false;
  for (const Ring& r : dec.rings) {
    if (r.heavy) {
      in_bucket = false;
      continue;
    }
    if (!in_bucket) {
      ++dec.bucket_count;
      in_bucket = true;
      dec.groups.push_back({r.index, r.index, {}, 0.0, 0.0});
    } else if (dec.groups.back().cost + r.cost > rp.err) {
      dec.groups.push_back({r.index, r.index, {}, 0.0, 0.0});
    }
    Group& g = dec.groups.back();
    g.hi = r.index;
    g.members.insert(g.members.end(), r.members.begin(), r.members.end());
    g.cost += r.cost;
    g.weight += r.weight;
  }

  for (const Group& g : dec.groups) {
    dec.two_point.push_back(detail::MakeTwoPoint(g.members, dec.distances, w, rp.z));
    detail::AppendTwoPoint(dec.two_point.back(), dec.z_coreset);
  }
  return dec;
}

template <MetricSpace M>
struct K1Reduction {
  typename M::point_type center;
  double avg_radius = 0.0;
  double close_threshold = 0.0;
  double far_threshold = 0.0;
  std::vector<double> distances;
  std::vector<Ring> w_rings;
  std::vector<std::size_t> close;
  std::vector<std::size_t> far;
  std::vector<CoresetEntry> s;  // at most 3 entries
};

// k = 1 split around the average radius r: P_close (d < eps r / 6z) collapses
// to its point nearest c, P_far (d > 120 z r / eps^2) to a two-point coreset,
// and the rest is returned as dyadic rings.
template <MetricSpace M>
K1Reduction<M> SplitK1(const WeightedPointSet<M>& points, const typename M::point_type& center, double eps,
                       double z, double avg_radius) {
  K1Reduction<M> red;
  red.center = center;
  red.avg_radius = avg_radius;
  red.close_threshold = eps / (6.0 * z) * avg_radius;
  red.far_threshold = 120.0 * z / (eps * eps) * avg_radius;
  red.distances = detail::DistancesTo(points, center);
  const auto& w = points.weights();

  if (avg_radius == 0.0) {
    // Every point sits at c.
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    red.close = all;
  } else {
    std::vector<std::size_t> main;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = red.distances[i];
      if (d < red.close_threshold) {
        red.close.push_back(i);
      } else if (d > red.far_threshold) {
        red.far.push_back(i);
      } else {
        main.push_back(i);
      }
    }
    red.w_rings = detail::BuildRings(main, red.distances, w, z);
    for (Ring& r : red.w_rings) r.heavy = true;
  }

  if (!red.close.empty()) {
    std::size_t nearest = red.close.front();
    double mass = 0.0;
    for (std::size_t m : red.close) {
      mass += w[m];
      if (red.distances[m] < red.distances[nearest]) nearest = m;
    }
    if (mass > 0.0) red.s.push_back({nearest, mass, Origin::kCenterMass});
  }
  if (!red.far.empty()) {
    detail::AppendTwoPoint(detail::MakeTwoPoint(red.far, red.distances, w, z), red.s);
  }
  return red;
}

template <MetricSpace M>
K1Reduction<M> ReduceK1(const WeightedPointSet<M>& points, const typename M::point_type& center,
                        const ClusteringParams& params) {
  if (params.k != 1) throw ConfigError("the three-point reduction needs k = 1");
  return SplitK1(points, center, params.eps, params.z, AvgRadius(points, center, params.z));
}

struct StructuralReport {
  std::size_t heavy = 0;
  std::size_t buckets = 0;
  std::size_t groups = 0;
  std::size_t coreset_points = 0;
  double heavy_bound = 0.0;  // cost / err
  double group_bound = 0.0;  // 2 cost / err + heavy + 1
  double max_group_cost = 0.0;
  bool heavy_ok = true;
  bool groups_ok = true;
  bool group_cost_ok = true;

  bool ok() const { return heavy_ok && groups_ok && group_cost_ok; }
};

template <MetricSpace M>
StructuralReport CountBounds(const RingDecomposition<M>& dec) {
  StructuralReport rep;
  rep.heavy = dec.heavy_count();
  rep.buckets = dec.bucket_count;
  rep.groups = dec.groups.size();
  rep.coreset_points = dec.z_coreset.size();
  const double err = dec.params.err;
  if (err > 0.0) {
    rep.heavy_bound = dec.params.cost / err;
    rep.group_bound = 2.0 * dec.params.cost / err + static_cast<double>(rep.heavy) + 1.0;
  } else {
    rep.heavy_bound = rep.group_bound = std::numeric_limits<double>::infinity();
  }
  for (const Group& g : dec.groups) rep.max_group_cost = std::max(rep.max_group_cost, g.cost);
  rep.heavy_ok = static_cast<double>(rep.heavy) <= rep.heavy_bound * (1.0 + 1e-12);
  rep.groups_ok = static_cast<double>(rep.groups) <= rep.group_bound * (1.0 + 1e-12);
  rep.group_cost_ok = rep.max_group_cost <= err * (1.0 + 1e-9);
  return rep;
}

}  // namespace ringcore

#endif  // RINGCORE_RING_DECOMP_HPP
