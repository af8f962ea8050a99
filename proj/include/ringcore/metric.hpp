#ifndef RINGCORE_METRIC_HPP
#define RINGCORE_METRIC_HPP

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <list>
#include <memory>
#include <mutex>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ringcore/common.hpp"

namespace ringcore {

// A metric backend owns an immutable store of points addressed by PointId and
// evaluates distances between arbitrary points of its space (stored or not).
template <typename M>
concept MetricSpace = requires(const M& m, PointId id, const typename M::point_type& a) {
  typename M::point_type;
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.point(id) } -> std::convertible_to<const typename M::point_type&>;
  { m.distance(a, a) } -> std::convertible_to<double>;
  { m.default_sdim() } -> std::convertible_to<double>;
};

// Backends that can synthesize candidate centers for the evaluation harness.
template <typename M>
concept SamplableSpace = MetricSpace<M> && requires(const M& m, const typename M::point_type& a, Rng& rng) {
  { m.random_point(rng) } -> std::convertible_to<typename M::point_type>;
  { m.perturb(a, 1.0, rng) } -> std::convertible_to<typename M::point_type>;
};

template <MetricSpace M>
double Dist(const M& space, PointId x, PointId y) {
  if (x.value >= space.size() || y.value >= space.size()) {
    throw Error("invalid point handle");
  }
  return space.distance(space.point(x), space.point(y));
}

using Vec = std::vector<double>;

namespace detail {

inline double EuclideanDistance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

// Axis-aligned box over a set of vectors, used to draw random centers.
struct Box {
  Vec lo;
  Vec hi;

  void Extend(const Vec& v) {
    if (lo.empty()) {
      lo = v;
      hi = v;
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }

  Vec Sample(Rng& rng) const {
    Vec v(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) v[i] = lo[i] + (hi[i] - lo[i]) * Uniform01(rng);
    return v;
  }

  double Diameter() const {
    return lo.empty() ? 0.0 : EuclideanDistance(lo, hi);
  }
};

inline Vec GaussianShift(const Vec& v, double scale, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec dir(v.size());
  double norm = 0.0;
  for (double& x : dir) {
    x = normal(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  Vec out = v;
  if (norm == 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] += scale * dir[i] / norm;
  return out;
}

// Minimum-cost perfect matching on a dense n x n cost matrix (row-major),
// O(n^3) shortest augmenting paths with vertex potentials.
inline double MinCostPerfectMatching(const std::vector<double>& cost, std::size_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t i0 = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[(match[j] - 1) * n + (j - 1)];
  return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------

class EuclideanSpace {
 public:
  using point_type = Vec;

  EuclideanSpace(std::size_t dim, std::vector<Vec> points) : dim_(dim), points_(std::move(points)) {
    if (dim_ == 0) throw Error("euclidean dimension must be positive");
    for (const Vec& p : points_) {
      if (p.size() != dim_) throw Error("point dimension mismatch");
      box_.Extend(p);
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }

  const Vec& point(PointId id) const {
    if (id.value >= points_.size()) throw Error("invalid point handle");
    return points_[id.value];
  }

  double distance(const Vec& a, const Vec& b) const { return detail::EuclideanDistance(a, b); }

  double default_sdim() const { return static_cast<double>(dim_ + 1); }

  Vec random_point(Rng& rng) const { return box_.Sample(rng); }
  Vec perturb(const Vec& p, double scale, Rng& rng) const { return detail::GaussianShift(p, scale, rng); }

 private:
  std::size_t dim_;
  std::vector<Vec> points_;
  detail::Box box_;
};

// ---------------------------------------------------------------------------

// Shortest-path metric of an undirected graph with nonnegative edge weights.
// Data points are a listed subset of vertices. Single-source shortest-path
// trees are cached per source (LRU, internally synchronized).
class GraphSpace {
 public:
  using point_type = std::uint32_t;

  struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double weight = 0.0;
  };

  GraphSpace(std::size_t vertex_count, const std::vector<Edge>& edges,
             std::vector<std::uint32_t> data_vertices, std::size_t cache_capacity = 256,
             double sdim_bound = 4.0)
      : vertex_count_(vertex_count),
        offsets_(vertex_count + 1, 0),
        data_(std::move(data_vertices)),
        cache_capacity_(std::max<std::size_t>(1, cache_capacity)),
        sdim_bound_(sdim_bound) {
    for (const Edge& e : edges) {
      if (e.u >= vertex_count_ || e.v >= vertex_count_) throw Error("edge endpoint out of range");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) throw Error("edge weights must be nonnegative");
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < vertex_count_; ++i) offsets_[i + 1] += offsets_[i];
    arcs_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) {
      arcs_[fill[e.u]++] = {e.v, e.weight};
      arcs_[fill[e.v]++] = {e.u, e.weight};
    }
    for (std::uint32_t v : data_) {
      if (v >= vertex_count_) throw Error("data vertex out of range");
    }
    if (!data_.empty()) {
      auto tree = Insert(data_.front(), ShortestPaths(data_.front()));
      for (std::uint32_t v : data_) {
        if (!std::isfinite((*tree)[v])) throw Error("graph is disconnected over the data vertices");
      }
    }
  }

  GraphSpace(const GraphSpace&) = delete;
  GraphSpace& operator=(const GraphSpace&) = delete;

  std::size_t size() const { return data_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }

  const std::uint32_t& point(PointId id) const {
    if (id.value >= data_.size()) throw Error("invalid point handle");
    return data_[id.value];
  }

  double distance(std::uint32_t a, std::uint32_t b) const {
    if (a >= vertex_count_ || b >= vertex_count_) throw Error("invalid vertex");
    if (a == b) return 0.0;
    if (auto tree = Lookup(a)) return Checked((*tree)[b]);
    if (auto tree = Lookup(b)) return Checked((*tree)[a]);
    return Checked((*Insert(a, ShortestPaths(a)))[b]);
  }

  double default_sdim() const { return sdim_bound_; }

  std::uint32_t random_point(Rng& rng) const {
    const auto idx = std::uniform_int_distribution<std::size_t>(0, data_.size() - 1)(rng);
    return Walk(data_[idx], 2, rng);
  }

  // Random walk whose length grows with `scale` measured in mean edge weights.
  std::uint32_t perturb(std::uint32_t v, double scale, Rng& rng) const {
    const double mean = MeanEdgeWeight();
    const std::size_t steps =
        mean > 0.0 ? static_cast<std::size_t>(std::min(64.0, std::ceil(scale / mean))) : 1;
    return Walk(v, steps, rng);
  }

  std::size_t cached_sources() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return lru_.size();
  }

 private:
  using Tree = std::shared_ptr<const std::vector<double>>;

  struct Arc {
    std::uint32_t to;
    double weight;
  };

  static double Checked(double d) {
    if (!std::isfinite(d)) throw Error("unreachable");
    return d;
  }

  std::vector<double> ShortestPaths(std::uint32_t source) const {
    std::vector<double> dist(vertex_count_, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (std::size_t a = offsets_[v]; a < offsets_[v + 1]; ++a) {
        const double nd = d + arcs_[a].weight;
        if (nd < dist[arcs_[a].to]) {
          dist[arcs_[a].to] = nd;
          heap.emplace(nd, arcs_[a].to);
        }
      }
    }
    return dist;
  }

  Tree Lookup(std::uint32_t source) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(source);
    if (it == index_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->second;
  }

  Tree Insert(std::uint32_t source, std::vector<double> dist) const {
    auto tree = std::make_shared<const std::vector<double>>(std::move(dist));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(source);
    if (it != index_.end()) return it->second->second;
    lru_.emplace_front(source, tree);
    index_[source] = lru_.begin();
    while (lru_.size() > cache_capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    return tree;
  }

  std::uint32_t Walk(std::uint32_t v, std::size_t steps, Rng& rng) const {
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t deg = offsets_[v + 1] - offsets_[v];
      if (deg == 0) break;
      const auto pick = std::uniform_int_distribution<std::size_t>(0, deg - 1)(rng);
      v = arcs_[offsets_[v] + pick].to;
    }
    return v;
  }

  double MeanEdgeWeight() const {
    if (arcs_.empty()) return 0.0;
    double s = 0.0;
    for (const Arc& a : arcs_) s += a.weight;
    return s / static_cast<double>(arcs_.size());
  }

  std::size_t vertex_count_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> data_;
  std::size_t cache_capacity_;
  double sdim_bound_;

  mutable std::mutex mutex_;
  mutable std::list<std::pair<std::uint32_t, Tree>> lru_;
  mutable std::unordered_map<std::uint32_t, std::list<std::pair<std::uint32_t, Tree>>::iterator> index_;
};

// ---------------------------------------------------------------------------

// p-Wasserstein distance between equal-size point multisets (l-tuples) of
// R^d: the p-th root of the cheapest bijection under Euclidean^p costs.
class WassersteinSpace {
 public:
  using Tuple = std::vector<Vec>;
  using point_type = Tuple;

  WassersteinSpace(std::size_t ell, double p, std::size_t dim, std::vector<Tuple> tuples)
      : ell_(ell), p_(p), dim_(dim), tuples_(std::move(tuples)) {
    if (ell_ == 0) throw Error("tuple length must be positive");
    if (!(p_ >= 1.0)) throw Error("wasserstein power p must be >= 1");
    for (const Tuple& t : tuples_) {
      Validate(t);
      for (const Vec& v : t) box_.Extend(v);
    }
  }

  std::size_t size() const { return tuples_.size(); }
  std::size_t ell() const { return ell_; }
  std::size_t dim() const { return dim_; }
  double p() const { return p_; }

  const Tuple& point(PointId id) const {
    if (id.value >= tuples_.size()) throw Error("invalid point handle");
    return tuples_[id.value];
  }

  double distance(const Tuple& a, const Tuple& b) const {
    if (a.size() != ell_ || b.size() != ell_) throw Error("tuple length mismatch");
    std::vector<double> cost(ell_ * ell_);
    for (std::size_t i = 0; i < ell_; ++i) {
      for (std::size_t j = 0; j < ell_; ++j) {
        cost[i * ell_ + j] = PowZ(detail::EuclideanDistance(a[i], b[j]), p_);
      }
    }
    const double total = std::max(0.0, detail::MinCostPerfectMatching(cost, ell_));
    return p_ == 1.0 ? total : std::pow(total, 1.0 / p_);
  }

  // Thm-style bound (sdim(base) + 1) * l with the Euclidean base sdim d + 1.
  double default_sdim() const { return static_cast<double>((dim_ + 2) * ell_); }

  Tuple random_point(Rng& rng) const {
    Tuple t(ell_);
    for (Vec& v : t) v = box_.Sample(rng);
    return t;
  }

  Tuple perturb(const Tuple& t, double scale, Rng& rng) const {
    Tuple out(t.size());
    const double each = scale / std::pow(static_cast<double>(ell_), 1.0 / p_);
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = detail::GaussianShift(t[i], each, rng);
    return out;
  }

  void Validate(const Tuple& t) const {
    if (t.size() != ell_) throw Error("tuple length mismatch");
    for (const Vec& v : t) {
      if (v.size() != dim_) throw Error("tuple point dimension mismatch");
    }
  }

 private:
  std::size_t ell_;
  double p_;
  std::size_t dim_;
  std::vector<Tuple> tuples_;
  detail::Box box_;
};

// ---------------------------------------------------------------------------

// Discrete Frechet distance between polylines in R^d.
class FrechetSpace {
 public:
  using Polyline = std::vector<Vec>;
  using point_type = Polyline;

  FrechetSpace(std::size_t dim, std::vector<Polyline> curves, std::size_t max_length = 0,
               double sdim_constant = 1.0)
      : dim_(dim), curves_(std::move(curves)), sdim_constant_(sdim_constant) {
    std::size_t longest = 0;
    for (const Polyline& c : curves_) {
      if (c.empty()) throw Error("empty polyline");
      if (max_length != 0 && c.size() > max_length) throw Error("polyline exceeds length cap");
      for (const Vec& v : c) {
        if (v.size() != dim_) throw Error("polyline point dimension mismatch");
        box_.Extend(v);
      }
      longest = std::max(longest, c.size());
    }
    max_length_ = max_length != 0 ? max_length : longest;
  }

  std::size_t size() const { return curves_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t max_length() const { return max_length_; }

  const Polyline& point(PointId id) const {
    if (id.value >= curves_.size()) throw Error("invalid point handle");
    return curves_[id.value];
  }

  double distance(const Polyline& a, const Polyline& b) const {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) throw Error("empty polyline");
    std::vector<double> prev(m), cur(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double d = detail::EuclideanDistance(a[i], b[j]);
        if (i == 0 && j == 0) {
          cur[j] = d;
        } else if (i == 0) {
          cur[j] = std::max(cur[j - 1], d);
        } else if (j == 0) {
          cur[j] = std::max(prev[j], d);
        } else {
          cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
        }
      }
      std::swap(prev, cur);
    }
    return prev[m - 1];
  }

  // c * d^2 * l^2 * log2(m), with center and input curves sharing the cap l = m.
  double default_sdim() const {
    const double len = static_cast<double>(std::max<std::size_t>(2, max_length_));
    const double d = static_cast<double>(dim_);
    return sdim_constant_ * d * d * len * len * std::log2(len);
  }

  Polyline random_point(Rng& rng) const {
    Polyline c(std::max<std::size_t>(1, max_length_));
    for (Vec& v : c) v = box_.Sample(rng);
    return c;
  }

  Polyline perturb(const Polyline& c, double scale, Rng& rng) const {
    Vec shift = detail::GaussianShift(Vec(dim_, 0.0), scale, rng);
    Polyline out = c;
    for (Vec& v : out) {
      for (std::size_t i = 0; i < dim_; ++i) v[i] += shift[i];
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Polyline> curves_;
  std::size_t max_length_ = 0;
  double sdim_constant_;
  detail::Box box_;
};

}  // namespace ringcore

#endif  // RINGCORE_METRIC_HPP
