#ifndef RINGCORE_POINT_SET_HPP
#define RINGCORE_POINT_SET_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/metric.hpp"

namespace ringcore {

using GroupLabels = std::vector<std::string>;

// Weighted multiset of handles into a metric backend. The backend must
// outlive every set that refers to it.
template <MetricSpace M>
class WeightedPointSet {
 public:
  using point_type = typename M::point_type;

  WeightedPointSet(const M& space, std::vector<PointId> ids, std::vector<double> weights,
                   std::vector<GroupLabels> labels = {})
      : space_(&space), ids_(std::move(ids)), weights_(std::move(weights)), labels_(std::move(labels)) {
    if (ids_.size() != weights_.size()) throw Error("weights and points differ in length");
    if (!labels_.empty() && labels_.size() != ids_.size()) {
      throw Error("group labels must cover every point");
    }
    for (PointId id : ids_) {
      if (id.value >= space.size()) throw Error("invalid point handle");
    }
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw Error("weights must be finite and nonnegative");
    }
  }

  // Every point of the backend with unit weight.
  static WeightedPointSet All(const M& space, std::vector<GroupLabels> labels = {}) {
    const std::size_t n = space.size();
    std::vector<PointId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = PointId{i};
    return WeightedPointSet(space, std::move(ids), std::vector<double>(n, 1.0), std::move(labels));
  }

  const M& space() const { return *space_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  PointId id(std::size_t i) const { return ids_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const point_type& point(std::size_t i) const { return space_->point(ids_[i]); }

  const std::vector<PointId>& ids() const { return ids_; }
  const std::vector<double>& weights() const { return weights_; }

  bool has_labels() const { return !labels_.empty(); }
  const GroupLabels& labels(std::size_t i) const { return labels_[i]; }
  const std::vector<GroupLabels>& all_labels() const { return labels_; }

  double total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

  // Positions `members` of this set, carrying weights and labels along.
  WeightedPointSet Subset(const std::vector<std::size_t>& members) const {
    std::vector<PointId> ids;
    std::vector<double> weights;
    std::vector<GroupLabels> labels;
    ids.reserve(members.size());
    weights.reserve(members.size());
    for (std::size_t m : members) {
      ids.push_back(ids_[m]);
      weights.push_back(weights_[m]);
      if (has_labels()) labels.push_back(labels_[m]);
    }
    return WeightedPointSet(*space_, std::move(ids), std::move(weights), std::move(labels));
  }

  WeightedPointSet WithoutLabels() const { return WeightedPointSet(*space_, ids_, weights_); }

 private:
  const M* space_;
  std::vector<PointId> ids_;
  std::vector<double> weights_;
  std::vector<GroupLabels> labels_;
};

struct ClusteringParams {
  int k = 1;
  double z = 1.0;
  double eps = 0.2;
  double delta = 0.1;
  std::uint64_t seed = 0;

  void Validate() const {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (!(z >= 1.0)) throw ConfigError("z must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  }
};

}  // namespace ringcore

#endif  // RINGCORE_POINT_SET_HPP
