#ifndef RINGCORE_TOOLS_IO_HPP
#define RINGCORE_TOOLS_IO_HPP

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringcore/ringcore.hpp"

namespace ringcore::io {

using Json = nlohmann::ordered_json;

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

// Euclidean CSV: header `x1..xd[,weight][,groups]`, groups `;`-separated.
struct PointsTable {
  std::size_t dim = 0;
  std::vector<Vec> points;
  std::vector<double> weights;
  std::vector<GroupLabels> labels;  // empty unless a groups column exists
  bool has_weights = false;
  bool has_groups = false;
};
PointsTable ParsePointsCsv(const std::string& text);
std::string PointsCsv(const PointsTable& table);

// Edge list `u v w` per line; `#` starts a comment.
struct EdgeList {
  std::size_t vertex_count = 0;
  std::vector<GraphSpace::Edge> edges;
};
EdgeList ParseEdgeList(const std::string& text);

// Data vertices: `id [weight]` per line.
struct DataVertices {
  std::vector<std::uint32_t> ids;
  std::vector<double> weights;
};
DataVertices ParseDataVertices(const std::string& text);

// JSON with line/column diagnostics on syntax errors.
Json ParseJson(const std::string& text);

// Array of point lists (tuples or polylines). With `equal_length` every list
// must have the same length, and `expected_length` (if nonzero) fixes it.
std::vector<std::vector<Vec>> ParsePointLists(const std::string& text, bool equal_length,
                                              std::size_t expected_length = 0);

Json ParamsToJson(const ClusteringParams& params);
ClusteringParams ParamsFromJson(const Json& j);

// A coreset as read back from its JSON file.
struct CoresetFile {
  std::vector<PointId> ids;
  std::vector<double> weights;
  std::vector<GroupLabels> labels;
  std::string mode;
  ClusteringParams params;
  double reference_cost = 0.0;
};
CoresetFile ParseCoresetJson(const std::string& text);

Json AccountingToJson(const SizeAccounting& a);
Json BudgetToJson(const SampleBudget& b);

template <MetricSpace M>
Json CoresetToJson(const CoresetResult<M>& r) {
  Json points = Json::array(), weights = Json::array(), provenance = Json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    points.push_back(r.points.id(i).value);
    weights.push_back(r.points.weight(i));
    provenance.push_back(OriginName(r.provenance[i]));
  }
  Json j;
  j["points"] = std::move(points);
  j["weights"] = std::move(weights);
  if (r.points.has_labels()) j["groups"] = r.points.all_labels();
  j["mode"] = ModeName(r.mode);
  j["params"] = ParamsToJson(r.params);
  j["alpha_used"] = r.alpha_used;
  j["working_eps"] = r.working_eps;
  j["reference_cost"] = r.reference_cost;
  j["budget"] = BudgetToJson(r.budget);
  j["size"] = r.points.size();
  j["size_accounting"] = AccountingToJson(r.accounting);
  j["provenance"] = std::move(provenance);
  return j;
}

// CSV mirror: one row per coreset point.
template <MetricSpace M>
std::string CoresetCsv(const CoresetResult<M>& r) {
  std::ostringstream out;
  out.precision(17);
  out << "handle,weight,origin" << (r.points.has_labels() ? ",groups" : "") << '\n';
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    out << r.points.id(i).value << ',' << r.points.weight(i) << ',' << OriginName(r.provenance[i]);
    if (r.points.has_labels()) {
      out << ',';
      const GroupLabels& g = r.points.labels(i);
      for (std::size_t l = 0; l < g.size(); ++l) out << (l ? ";" : "") << g[l];
    }
    out << '\n';
  }
  return out.str();
}

inline Json RingToJson(const Ring& ring) {
  return Json{{"index", ring.index},       {"inner_radius", ring.inner_radius()}, {"size", ring.members.size()},
              {"cost", ring.cost},         {"weight", ring.weight},               {"heavy", ring.heavy}};
}

template <MetricSpace M>
Json DecompositionToJson(const RingDecomposition<M>& dec, const WeightedPointSet<M>& points) {
  Json rings = Json::array(), groups = Json::array(), coreset = Json::array();
  for (const Ring& ring : dec.rings) rings.push_back(RingToJson(ring));
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    const Group& grp = dec.groups[g];
    const TwoPointCoreset& tp = dec.two_point[g];
    groups.push_back(Json{{"lo", grp.lo},
                          {"hi", grp.hi},
                          {"size", grp.members.size()},
                          {"cost", grp.cost},
                          {"weight", grp.weight},
                          {"close", points.id(tp.close).value},
                          {"far", points.id(tp.far).value},
                          {"w_close", tp.w_close},
                          {"w_far", tp.w_far}});
  }
  for (const CoresetEntry& e : dec.z_coreset) {
    coreset.push_back(Json{{"point", points.id(e.member).value}, {"weight", e.weight}, {"origin", OriginName(e.origin)}});
  }
  const StructuralReport rep = CountBounds(dec);
  return Json{{"t", dec.params.t},
              {"err", dec.params.err},
              {"cost", dec.params.cost},
              {"at_center", dec.at_center.size()},
              {"rings", std::move(rings)},
              {"buckets", dec.bucket_count},
              {"groups", std::move(groups)},
              {"z_coreset", std::move(coreset)},
              {"bounds",
               Json{{"heavy", rep.heavy},
                    {"heavy_bound", rep.heavy_bound},
                    {"groups", rep.groups},
                    {"group_bound", rep.group_bound},
                    {"max_group_cost", rep.max_group_cost},
                    {"ok", rep.ok()}}}};
}

template <MetricSpace M>
Json K1ToJson(const K1Reduction<M>& red, const WeightedPointSet<M>& points) {
  Json rings = Json::array(), s = Json::array();
  for (const Ring& ring : red.w_rings) rings.push_back(RingToJson(ring));
  for (const CoresetEntry& e : red.s) {
    s.push_back(Json{{"point", points.id(e.member).value}, {"weight", e.weight}, {"origin", OriginName(e.origin)}});
  }
  return Json{{"avg_radius", red.avg_radius},
              {"close_threshold", red.close_threshold},
              {"far_threshold", red.far_threshold},
              {"close", red.close.size()},
              {"far", red.far.size()},
              {"w_rings", std::move(rings)},
              {"s", std::move(s)}};
}

template <typename Point>
Json ReportToJson(const EvalReport<Point>& report) {
  Json trials = Json::array();
  for (const auto& r : report.records) {
    Json t{{"trial", r.trial}, {"generator", GeneratorName(r.generator)}, {"centers", r.centers}};
    if (r.masses) t["masses"] = *r.masses;
    t["cost_p"] = r.cost_p;
    t["cost_s"] = r.cost_s;
    t["relative_error"] = r.relative_error;
    t["additive_error"] = r.additive_error;
    trials.push_back(std::move(t));
  }
  return Json{{"error", report.error == ErrorKind::kRelative ? "relative" : "additive"},
              {"additive_reference", report.additive_reference},
              {"threshold", report.threshold},
              {"trials", report.records.size()},
              {"max", report.max_error},
              {"mean", report.mean_error},
              {"p50", report.p50},
              {"p90", report.p90},
              {"p99", report.p99},
              {"failures", report.failures},
              {"records", std::move(trials)}};
}

}  // namespace ringcore::io

#endif  // RINGCORE_TOOLS_IO_HPP
