#ifndef RINGCORE_ORACLE_HPP
#define RINGCORE_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ringcore/assignment.hpp"
#include "ringcore/bicriteria.hpp"
#include "ringcore/common.hpp"
#include "ringcore/cost.hpp"
#include "ringcore/metric.hpp"
#include "ringcore/point_set.hpp"

// Brute-force oracles. They share nothing with the solvers except the
// backend's distance function.

namespace ringcore {

struct ExhaustiveResult {
  double cost = 0.0;
  std::vector<std::size_t> centers;  // positions in the point set
};

inline double Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Exact minimum of cost_z over all k-subsets of the data points.
template <MetricSpace M>
ExhaustiveResult ExhaustiveOpt(const WeightedPointSet<M>& points, int k, double z,
                               double max_combinations = 1e6) {
  const std::size_t n = points.size();
  if (k < 1 || n == 0) throw ConfigError("exhaustive search needs k >= 1 and points");
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  if (Binomial(n, kk) > max_combinations) throw ConfigError("combination budget exceeded");

  // col[c][i] = w_i * dist(i, c)^z; prefix minima per depth keep the
  // innermost loop a single pass over the points.
  std::vector<std::vector<double>> col(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      col[c][i] = points.weight(i) * std::pow(points.space().distance(points.point(i), points.point(c)), z);
    }
  }
  ExhaustiveResult best{std::numeric_limits<double>::infinity(), {}};
  std::vector<std::size_t> pick(kk);
  std::vector<std::vector<double>> prefix(kk + 1, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  auto descend = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    const std::vector<double>& above = prefix[depth];
    if (depth + 1 == kk) {
      for (std::size_t c = from; c < n; ++c) {
        const std::vector<double>& cc = col[c];
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) cost += std::min(above[i], cc[i]);
        if (cost < best.cost) {
          pick[depth] = c;
          best = {cost, pick};
        }
      }
      return;
    }
    for (std::size_t c = from; c + (kk - depth) <= n; ++c) {
      pick[depth] = c;
      std::vector<double>& below = prefix[depth + 1];
      for (std::size_t i = 0; i < n; ++i) below[i] = std::min(above[i], col[c][i]);
      self(self, depth + 1, c + 1);
    }
  };
  descend(descend, 0, 0);
  return best;
}

// Exact constrained cost by enumerating every integral assignment. Weights
// and masses must be integers, total mass <= 12 and at most 3 centers.
template <MetricSpace M>
double BruteTransport(const WeightedPointSet<M>& points, const AssignmentConstraint<typename M::point_type>& gamma,
                      double z) {
  const std::size_t n = points.size(), k = gamma.centers.size();
  if (k == 0 || k > 3) throw ConfigError("brute transport needs 1 to 3 centers");
  if (gamma.masses.size() != k) throw ConfigError("constraint masses and centers differ in length");
  auto as_int = [](double x) {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || r < 0.0) throw ConfigError("brute transport needs integral masses");
    return static_cast<int>(r);
  };
  std::vector<int> supply(n), demand(k);
  int total_supply = 0, total_demand = 0;
  for (std::size_t i = 0; i < n; ++i) total_supply += supply[i] = as_int(points.weight(i));
  for (std::size_t j = 0; j < k; ++j) total_demand += demand[j] = as_int(gamma.masses[j]);
  if (total_supply > 12) throw ConfigError("brute transport mass budget exceeded");
  if (total_supply != total_demand) throw Error("mass mismatch");

  std::vector<double> cost(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      cost[i * k + j] = std::pow(points.space().distance(points.point(i), gamma.centers[j]), z);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  // Split point i's units over the centers, respecting remaining demand.
  auto split = [&](auto&& self, std::size_t i, std::size_t j, int left, double acc) -> void {
    if (i == n) {
      best = std::min(best, acc);
      return;
    }
    if (j + 1 == k) {
      if (left > demand[j]) return;
      demand[j] -= left;
      self(self, i + 1, 0, i + 1 < n ? supply[i + 1] : 0, acc + left * cost[i * k + j]);
      demand[j] += left;
      return;
    }
    for (int x = 0; x <= std::min(left, demand[j]); ++x) {
      demand[j] -= x;
      self(self, i, j + 1, left - x, acc + x * cost[i * k + j]);
      demand[j] += x;
    }
  };
  split(split, 0, 0, n > 0 ? supply[0] : 0, 0.0);
  return best;
}

// p-Wasserstein distance between equal-length tuples by trying every
// bijection.
inline double BruteWasserstein(const std::vector<Vec>& s, const std::vector<Vec>& t, double p) {
  if (s.size() != t.size()) throw ConfigError("tuple-length mismatch");
  if (s.size() > 6) throw ConfigError("brute Wasserstein supports at most 6 points per tuple");
  if (s.empty()) return 0.0;
  std::vector<std::size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double sq = 0.0;
      for (std::size_t d = 0; d < s[i].size(); ++d) {
        const double diff = s[i][d] - t[perm[i]][d];
        sq += diff * diff;
      }
      sum += std::pow(std::sqrt(sq), p);
    }
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best, 1.0 / p);
}

// ---- evaluation harness ----

enum class CenterGenerator { kUniform, kSubsample, kPerturbed, kAdversarial };
enum class ConstraintKind { kNone, kInduced, kRandom, kMixed };
enum class ErrorKind { kRelative, kAdditive };

inline const char* GeneratorName(CenterGenerator g) {
  switch (g) {
    case CenterGenerator::kUniform: return "uniform";
    case CenterGenerator::kSubsample: return "subsample";
    case CenterGenerator::kPerturbed: return "perturbed";
    case CenterGenerator::kAdversarial: return "adversarial";
  }
  return "?";
}

inline const char* ConstraintName(ConstraintKind c) {
  switch (c) {
    case ConstraintKind::kNone: return "none";
    case ConstraintKind::kInduced: return "induced";
    case ConstraintKind::kRandom: return "random";
    case ConstraintKind::kMixed: return "mixed";
  }
  return "?";
}

template <typename Point>
struct EvalConfig {
  int trials = 100;
  int centers = 1;  // |C| per trial
  double z = 1.0;
  std::vector<CenterGenerator> generators = {CenterGenerator::kUniform, CenterGenerator::kSubsample,
                                             CenterGenerator::kPerturbed, CenterGenerator::kAdversarial};
  ConstraintKind constraint = ConstraintKind::kNone;
  ErrorKind error = ErrorKind::kRelative;
  double additive_reference = 0.0;  // A in |cost_S - cost_P| <= eps (cost_P + A)
  double threshold = 0.2;
  std::uint64_t seed = 0;
  // Centers the perturbed and adversarial generators start from. Empty:
  // computed by a bicriteria run on P.
  CenterList<Point> anchors;
};

template <typename Point>
struct TrialRecord {
  std::size_t trial = 0;
  CenterGenerator generator = CenterGenerator::kUniform;
  CenterList<Point> centers;
  std::optional<std::vector<double>> masses;
  double cost_p = 0.0;
  double cost_s = 0.0;
  double relative_error = 0.0;
  double additive_error = 0.0;  // |cost_s - cost_p| / (cost_p + A)
};

inline double RelativeError(double cost_p, double cost_s) {
  const double diff = std::abs(cost_s - cost_p);
  if (diff == 0.0) return 0.0;
  return cost_p > 0.0 ? diff / cost_p : std::numeric_limits<double>::infinity();
}

inline double AdditiveError(double cost_p, double cost_s, double reference) {
  const double diff = std::abs(cost_s - cost_p);
  if (diff == 0.0) return 0.0;
  const double denom = cost_p + reference;
  return denom > 0.0 ? diff / denom : std::numeric_limits<double>::infinity();
}

template <typename Point>
struct EvalReport {
  std::vector<TrialRecord<Point>> records;
  ErrorKind error = ErrorKind::kRelative;
  double additive_reference = 0.0;
  double threshold = 0.0;
  double max_error = 0.0;
  double mean_error = 0.0;
  double p50 = 0.0, p90 = 0.0, p99 = 0.0;
  std::size_t failures = 0;

  double ErrorOf(const TrialRecord<Point>& r) const {
    return error == ErrorKind::kRelative ? r.relative_error : r.additive_error;
  }
  bool passed() const { return failures == 0; }

  // Recomputes every error from the stored costs.
  bool Consistent(double tol = 1e-12) const {
    for (const auto& r : records) {
      const double rel = RelativeError(r.cost_p, r.cost_s), add = AdditiveError(r.cost_p, r.cost_s, additive_reference);
      auto close = [&](double a, double b) { return a == b || std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); };
      if (!close(rel, r.relative_error) || !close(add, r.additive_error)) return false;
    }
    return true;
  }
};

namespace detail {

template <typename Point>
void Aggregate(EvalReport<Point>& report) {
  std::vector<double> errors;
  for (const auto& r : report.records) errors.push_back(report.ErrorOf(r));
  if (errors.empty()) return;
  std::sort(errors.begin(), errors.end());
  auto quantile = [&](double q) {
    const std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(errors.size())));
    return errors[std::clamp<std::size_t>(rank, 1, errors.size()) - 1];
  };
  report.max_error = errors.back();
  report.mean_error = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
  report.p50 = quantile(0.5);
  report.p90 = quantile(0.9);
  report.p99 = quantile(0.99);
  report.failures = static_cast<std::size_t>(
      std::count_if(errors.begin(), errors.end(), [&](double e) { return !(e <= report.threshold); }));
}

}  // namespace detail

// Draws center sets (and constraints) from the configured generators,
// evaluates P and S on each and aggregates the errors. Generators rotate by
// trial index; each trial has its own RNG stream.
template <SamplableSpace M>
EvalReport<typename M::point_type> EvalHarness(const WeightedPointSet<M>& p, const WeightedPointSet<M>& s,
                                               const EvalConfig<typename M::point_type>& config) {
  using Point = typename M::point_type;
  if (config.trials < 0 || config.centers < 1) throw ConfigError("harness needs trials >= 0 and centers >= 1");
  if (config.generators.empty()) throw ConfigError("harness needs at least one generator");
  if (&p.space() != &s.space()) throw ConfigError("coreset and dataset use different backends");
  const M& space = p.space();

  CenterList<Point> anchors = config.anchors;
  if (anchors.empty()) {
    ClusteringParams bp;
    bp.k = config.centers;
    bp.z = config.z;
    bp.seed = DeriveSeed(config.seed, 0xa7c);
    anchors = BicriteriaApprox(p, bp).centers;
  }
  // Scale of the perturbations: the average radius around the anchors.
  double radius = 0.0;
  {
    double cost = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      cost += p.weight(i) * PowZ(NearestCenter(space, p.point(i), anchors).distance, config.z);
    }
    radius = std::pow(cost / p.total_weight(), 1.0 / config.z);
    if (!(radius > 0.0)) radius = 1.0;
  }

  EvalReport<Point> report;
  report.error = config.error;
  report.additive_reference = config.additive_reference;
  report.threshold = config.threshold;
  report.records.resize(static_cast<std::size_t>(config.trials));
  ParallelFor(report.records.size(), [&](std::size_t t) {
    Rng rng(DeriveSeed(config.seed, 0xe7a1, t));
    TrialRecord<Point>& rec = report.records[t];
    rec.trial = t;
    rec.generator = config.generators[t % config.generators.size()];
    for (int c = 0; c < config.centers; ++c) {
      const Point& anchor = anchors[static_cast<std::size_t>(c) % anchors.size()];
      switch (rec.generator) {
        case CenterGenerator::kUniform:
          rec.centers.push_back(space.random_point(rng));
          break;
        case CenterGenerator::kSubsample:
          rec.centers.push_back(p.point(static_cast<std::size_t>(rng() % p.size())));
          break;
        case CenterGenerator::kPerturbed:
          rec.centers.push_back(space.perturb(anchor, 0.5 * radius, rng));
          break;
        case CenterGenerator::kAdversarial: {
          // Near an anchor at a dyadic scale, so centers land on ring boundaries.
          const int j = static_cast<int>(rng() % 9) - 4;
          rec.centers.push_back(space.perturb(anchor, std::ldexp(radius, j), rng));
          break;
        }
      }
    }
    ConstraintKind kind = config.constraint;
    if (kind == ConstraintKind::kMixed) kind = t % 2 == 0 ? ConstraintKind::kInduced : ConstraintKind::kRandom;
    if (kind == ConstraintKind::kNone) {
      rec.cost_p = CostZ(p, rec.centers, config.z);
      rec.cost_s = CostZ(s, rec.centers, config.z);
    } else {
      const AssignmentConstraint<Point> gamma =
          kind == ConstraintKind::kInduced ? InducedConstraint(p, rec.centers)
                                           : RandomConstraint(rec.centers, p.total_weight(), rng());
      rec.masses = gamma.masses;
      rec.cost_p = SolveTransport(p, gamma, config.z).objective;
      rec.cost_s = SolveTransport(s, gamma, config.z).objective;
    }
    rec.relative_error = RelativeError(rec.cost_p, rec.cost_s);
    rec.additive_error = AdditiveError(rec.cost_p, rec.cost_s, config.additive_reference);
  });
  detail::Aggregate(report);
  return report;
}

}  // namespace ringcore

#endif  // RINGCORE_ORACLE_HPP
