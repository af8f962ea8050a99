#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <type_traits>

#include "CLI11.hpp"
#include "io.hpp"
#include "synth.hpp"

namespace ringcore::cli {

namespace {

using io::Json;

CoresetMode ParseMode(const std::string& mode) {
  if (mode == "vanilla") return CoresetMode::kVanilla;
  if (mode == "assignment_preserving" || mode == "fair") return CoresetMode::kAssignmentPreserving;
  throw ConfigError("unknown mode '" + mode + "'");
}

ComposerConfig MakeComposerConfig(const RunConfig& c) {
  ComposerConfig cc;
  cc.budget = c.budget;
  cc.sdim_bound = c.sdim;
  cc.bicriteria.alpha_budget = c.alpha_budget;
  cc.bicriteria.repetitions = c.repetitions;
  cc.bicriteria.max_swaps = c.swaps;
  return cc;
}

std::vector<PointId> Handles(std::size_t n) {
  std::vector<PointId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = PointId{i};
  return ids;
}

// Loads the configured backend and hands the full weighted dataset to `fn`.
template <typename Fn>
int WithDataset(const RunConfig& c, Fn&& fn) {
  if (c.input.empty()) throw ConfigError("--input is required");
  const std::string text = io::ReadFile(c.input);
  if (c.backend == "euclidean") {
    io::PointsTable t = io::ParsePointsCsv(text);
    EuclideanSpace space(t.dim, std::move(t.points));
    WeightedPointSet<EuclideanSpace> set(space, Handles(space.size()), t.weights, t.labels);
    return fn(set);
  }
  if (c.backend == "graph") {
    if (c.points.empty()) throw ConfigError("graph backend needs --points");
    const io::EdgeList edges = io::ParseEdgeList(text);
    const io::DataVertices data = io::ParseDataVertices(io::ReadFile(c.points));
    std::size_t vertices = edges.vertex_count;
    for (std::uint32_t v : data.ids) vertices = std::max<std::size_t>(vertices, v + std::size_t{1});
    GraphSpace space(vertices, edges.edges, data.ids, c.cache, c.sdim > 0.0 ? c.sdim : 4.0);
    WeightedPointSet<GraphSpace> set(space, Handles(space.size()), data.weights);
    return fn(set);
  }
  if (c.backend == "wasserstein") {
    std::vector<std::vector<Vec>> tuples = io::ParsePointLists(text, true, c.ell);
    const std::size_t ell = tuples.front().size(), dim = tuples.front().front().size();
    WassersteinSpace space(ell, c.p, dim, std::move(tuples));
    WeightedPointSet<WassersteinSpace> set(space, Handles(space.size()), std::vector<double>(space.size(), 1.0));
    return fn(set);
  }
  if (c.backend == "frechet") {
    std::vector<std::vector<Vec>> curves = io::ParsePointLists(text, false);
    const std::size_t dim = curves.front().front().size();
    FrechetSpace space(dim, std::move(curves), c.max_length, c.sdim > 0.0 ? c.sdim : 1.0);
    WeightedPointSet<FrechetSpace> set(space, Handles(space.size()), std::vector<double>(space.size(), 1.0));
    return fn(set);
  }
  throw ConfigError("unknown backend '" + c.backend + "'");
}

void PrintAccounting(std::ostream& out, const SizeAccounting& a, const SampleBudget& b) {
  out << "coreset size        " << a.size << '\n'
      << "accounted bound     " << a.accounted_bound << " (center-mass " << a.center_mass_points << ", groups "
      << a.groups << ", k=1 clusters " << a.k1_clusters << ", ring budgets " << a.ring_budget_total << ")\n"
      << "rings sampled       " << a.rings_sampled << " (" << a.ring_input_points << " points -> "
      << a.ring_sample_points << ")\n"
      << "per-ring budget m   " << b.m << '\n'
      << "size bound          " << a.size_bound << '\n';
}

template <typename Result>
void Emit(const RunConfig& c, const Json& j, const Result& r, std::ostream& out) {
  if (c.out.empty()) throw ConfigError("--out is required");
  io::WriteFile(c.out, j.dump(1) + "\n");
  if (!c.csv.empty()) io::WriteFile(c.csv, io::CoresetCsv(r));
  PrintAccounting(out, r.accounting, r.budget);
}

}  // namespace

int CmdBuild(const RunConfig& c, std::ostream& out) {
  c.params.Validate();
  const CoresetMode mode = ParseMode(c.mode);
  const ComposerConfig cc = MakeComposerConfig(c);
  return WithDataset(c, [&](const auto& set) {
    using M = std::remove_cvref_t<decltype(set.space())>;
    if (c.mode == "fair") {
      const FairCoresetResult<M> fair = BuildFairCoreset(set, c.params, cc);
      Json j = io::CoresetToJson(fair.coreset);
      Json parts = Json::array();
      for (std::size_t i = 0; i < fair.partition.delta(); ++i) {
        parts.push_back(Json{{"signature", fair.partition.signatures[i]},
                             {"size", fair.partition.parts[i].size()},
                             {"weight", fair.part_weights[i]},
                             {"coreset_weight", fair.part_coreset_weights[i]}});
      }
      j["fair"] = Json{{"delta", fair.partition.delta()}, {"parts", std::move(parts)}};
      Emit(c, j, fair.coreset, out);
      out << "fair parts          " << fair.partition.delta() << '\n';
      return int{kOk};
    }
    if constexpr (std::is_same_v<M, WassersteinSpace>) {
      if (c.params.k == 1) {
        const CoresetResult<M> r = BuildBarycenterCoreset(set, c.params, cc);
        Emit(c, io::CoresetToJson(r), r, out);
        return int{kOk};
      }
    }
    const CoresetResult<M> r = BuildCoreset(set, c.params, mode, cc);
    Emit(c, io::CoresetToJson(r), r, out);
    return int{kOk};
  });
}

int CmdEval(const RunConfig& c, std::ostream& out) {
  if (c.coreset.empty()) throw ConfigError("--coreset is required");
  const io::CoresetFile file = io::ParseCoresetJson(io::ReadFile(c.coreset));
  return WithDataset(c, [&](const auto& set) {
    using M = std::remove_cvref_t<decltype(set.space())>;
    using Point = typename M::point_type;
    for (PointId id : file.ids) {
      if (id.value >= set.size()) throw ConfigError("coreset refers to handle " + std::to_string(id.value) +
                                                    " outside the dataset");
    }
    const WeightedPointSet<M> s(set.space(), file.ids, file.weights);
    EvalConfig<Point> ec;
    ec.trials = c.trials;
    ec.centers = c.centers > 0 ? c.centers : file.params.k;
    ec.z = file.params.z;
    ec.threshold = c.threshold > 0.0 ? c.threshold : file.params.eps;
    ec.seed = c.eval_seed;
    std::string constraint = c.constraint;
    if (constraint.empty()) constraint = file.mode == "assignment_preserving" ? "mixed" : "none";
    if (constraint == "none") {
      ec.constraint = ConstraintKind::kNone;
    } else if (constraint == "induced") {
      ec.constraint = ConstraintKind::kInduced;
    } else if (constraint == "random") {
      ec.constraint = ConstraintKind::kRandom;
    } else if (constraint == "mixed") {
      ec.constraint = ConstraintKind::kMixed;
    } else {
      throw ConfigError("unknown constraint kind '" + constraint + "'");
    }
    std::string error = c.error;
    if (error.empty()) error = file.reference_cost > 0.0 ? "additive" : "relative";
    if (error != "relative" && error != "additive") throw ConfigError("unknown error kind '" + error + "'");
    ec.error = error == "relative" ? ErrorKind::kRelative : ErrorKind::kAdditive;
    ec.additive_reference = file.reference_cost;
    if (ec.constraint != ConstraintKind::kNone &&
        std::abs(s.total_weight() - set.total_weight()) > 1e-6 * set.total_weight()) {
      throw ConfigError("coreset and dataset weights differ; constrained evaluation needs equal mass");
    }

    const EvalReport<Point> report = EvalHarness(set, s, ec);
    if (!c.out.empty()) io::WriteFile(c.out, io::ReportToJson(report).dump(1) + "\n");
    out << "trials     " << report.records.size() << '\n'
        << "error      " << error << " (threshold " << report.threshold << ")\n"
        << "max        " << report.max_error << '\n'
        << "mean       " << report.mean_error << '\n'
        << "p90        " << report.p90 << '\n'
        << "failures   " << report.failures << '\n';
    return report.failures == 0 ? int{kOk} : int{kThresholdFailed};
  });
}

namespace {

struct BenchRow {
  std::size_t n = 0;
  std::size_t size = 0;
  double size_bound = 0.0;
  std::size_t ring_budget = 0;
  double build_ms = 0.0;
  double eval_ms = 0.0;
  double max_error = 0.0;
};

double Millis(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

template <MetricSpace M, typename Build>
BenchRow BenchOne(const WeightedPointSet<M>& set, Build&& build, const EvalConfig<typename M::point_type>& ec) {
  BenchRow row;
  row.n = set.size();
  const auto t0 = std::chrono::steady_clock::now();
  const CoresetResult<M> r = build(set);
  const auto t1 = std::chrono::steady_clock::now();
  const auto report = EvalHarness(set, r.points, ec);
  const auto t2 = std::chrono::steady_clock::now();
  row.size = r.points.size();
  row.size_bound = r.accounting.size_bound;
  row.ring_budget = r.budget.m;
  row.build_ms = Millis(t1 - t0);
  row.eval_ms = Millis(t2 - t1);
  row.max_error = report.max_error;
  return row;
}

}  // namespace

int CmdBench(const RunConfig& c, std::ostream& out) {
  c.params.Validate();
  const CoresetMode mode = ParseMode(c.mode == "fair" ? "assignment_preserving" : c.mode);
  const ComposerConfig cc = MakeComposerConfig(c);
  if (c.sizes.empty()) throw ConfigError("--sizes must not be empty");
  std::vector<BenchRow> rows;
  for (std::size_t n : c.sizes) {
    if (n == 0) throw ConfigError("bench sizes must be positive");
    const std::uint64_t seed = DeriveSeed(c.params.seed, 0xbe7c, n);
    if (c.profile == "gaussian" || c.profile == "rings") {
      const std::size_t comps = static_cast<std::size_t>(c.params.k);
      EuclideanSpace space(2, c.profile == "gaussian" ? synth::GaussianMixture(n, 2, comps, seed)
                                                      : synth::RingStress(n, 2, comps, seed));
      const auto set = WeightedPointSet<EuclideanSpace>::All(space);
      EvalConfig<Vec> ec;
      ec.trials = c.trials;
      ec.centers = c.params.k;
      ec.z = c.params.z;
      ec.threshold = c.params.eps;
      ec.seed = c.params.seed;
      rows.push_back(BenchOne(set, [&](const auto& s) { return BuildCoreset(s, c.params, mode, cc); }, ec));
    } else if (c.profile == "tuples") {
      const std::size_t ell = c.ell ? c.ell : 3;
      WassersteinSpace space(ell, c.p, 2, synth::TupleCloud(n, ell, 2, seed));
      const auto set = WeightedPointSet<WassersteinSpace>::All(space);
      ClusteringParams params = c.params;
      params.k = 1;
      EvalConfig<WassersteinSpace::Tuple> ec;
      ec.trials = c.trials;
      ec.centers = 1;
      ec.z = 1.0;
      ec.threshold = c.params.eps;
      ec.seed = c.params.seed;
      ec.error = ErrorKind::kAdditive;
      // The additive reference is only known once the coreset exists; `ec`
      // is read by BenchOne after the build returns.
      rows.push_back(BenchOne(set, [&](const auto& s) {
        CoresetResult<WassersteinSpace> r = BuildBarycenterCoreset(s, params, cc);
        ec.additive_reference = r.reference_cost;
        return r;
      }, ec));
    } else {
      throw ConfigError("unknown bench profile '" + c.profile + "'");
    }
  }

  Json table = Json::array();
  for (const BenchRow& r : rows) {
    table.push_back(Json{{"n", r.n},
                         {"size", r.size},
                         {"size_bound", r.size_bound},
                         {"ring_budget", r.ring_budget},
                         {"build_ms", r.build_ms},
                         {"eval_ms", r.eval_ms},
                         {"max_error", r.max_error}});
  }
  if (!c.out.empty()) {
    io::WriteFile(c.out, Json{{"profile", c.profile}, {"params", io::ParamsToJson(c.params)}, {"mode", ModeName(mode)},
                              {"rows", table}}
                             .dump(1) + "\n");
  }
  out << std::left << std::setw(10) << "n" << std::setw(10) << "size" << std::setw(14) << "size_bound"
      << std::setw(10) << "m" << std::setw(12) << "build_ms" << std::setw(12) << "eval_ms"
      << "max_error\n";
  for (const BenchRow& r : rows) {
    out << std::left << std::setw(10) << r.n << std::setw(10) << r.size << std::setw(14) << std::setprecision(6)
        << r.size_bound << std::setw(10) << r.ring_budget << std::setw(12) << std::fixed << std::setprecision(1)
        << r.build_ms << std::setw(12) << r.eval_ms << std::defaultfloat << std::setprecision(4) << r.max_error
        << '\n';
  }
  return kOk;
}

int CmdInspect(const RunConfig& c, std::ostream& out) {
  c.params.Validate();
  const ComposerConfig cc = MakeComposerConfig(c);
  return WithDataset(c, [&](const auto& set) {
    const auto bic = BicriteriaApprox(set, c.params, cc.bicriteria);
    const auto clusters = ClusterPartition(set, bic);
    const double eps_w = c.params.eps / (bic.alpha_budget + 1.0);
    Json list = Json::array();
    for (const auto& cl : clusters) {
      const ReductionParams rp =
          MakeReductionParams(CostToCenter(cl.points, cl.center, c.params.z), c.params.k, c.params.z, eps_w);
      Json j{{"center", cl.center_id.value},
             {"size", cl.points.size()},
             {"weight", cl.points.total_weight()},
             {"decomposition", io::DecompositionToJson(Decompose(cl.points, cl.center, rp), cl.points)}};
      if (c.params.k == 1) {
        const double r = AvgRadius(cl.points, cl.center, c.params.z);
        j["k1"] = io::K1ToJson(SplitK1(cl.points, cl.center, eps_w, c.params.z, r), cl.points);
      }
      list.push_back(std::move(j));
    }
    const Json dump{{"params", io::ParamsToJson(c.params)},
                    {"alpha_used", bic.alpha_budget},
                    {"working_eps", eps_w},
                    {"bicriteria_cost", bic.cost},
                    {"clusters", std::move(list)}};
    if (c.out.empty()) {
      out << dump.dump(1) << '\n';
    } else {
      io::WriteFile(c.out, dump.dump(1) + "\n");
      out << "clusters " << clusters.size() << '\n';
    }
    return int{kOk};
  });
}

namespace {

void AddDataOptions(CLI::App* app, RunConfig& c) {
  app->add_option("--input", c.input, "dataset: CSV, edge list, or JSON tuples/curves");
  app->add_option("--points", c.points, "graph data vertices (id [weight] per line)");
  app->add_option("--backend", c.backend, "euclidean | graph | wasserstein | frechet")
      ->check(CLI::IsMember({"euclidean", "graph", "wasserstein", "frechet"}));
  app->add_option("--l", c.ell, "tuple length (wasserstein)");
  app->add_option("--p", c.p, "Wasserstein power");
  app->add_option("--max-length", c.max_length, "polyline length cap (frechet)");
  app->add_option("--cache", c.cache, "graph shortest-path cache capacity");
  app->add_option("--sdim", c.sdim, "shattering-dimension bound override");
}

void AddParamOptions(CLI::App* app, RunConfig& c) {
  app->add_option("--k", c.params.k, "number of centers");
  app->add_option("--z", c.params.z, "distance power");
  app->add_option("--eps", c.params.eps, "target error");
  app->add_option("--delta", c.params.delta, "failure probability");
  app->add_option("--seed", c.params.seed, "random seed");
  app->add_option("--mode", c.mode, "vanilla | assignment_preserving | fair")
      ->check(CLI::IsMember({"vanilla", "assignment_preserving", "fair"}));
  app->add_option("--c0", c.budget.c0, "assignment-preserving budget constant");
  app->add_option("--c1", c.budget.c1, "vanilla budget constant");
  app->add_option("--budget-form", c.budget.form, "eps5 | eps3_with_dim")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, BudgetForm>{{"eps5", BudgetForm::kEps5}, {"eps3_with_dim", BudgetForm::kEps3WithDim}}));
  app->add_option("--alpha", c.alpha_budget, "bicriteria approximation factor (0: 4^(z+1))");
  app->add_option("--repetitions", c.repetitions, "bicriteria seeding runs (0: ceil(log2(1/delta)))");
  app->add_option("--swaps", c.swaps, "local-search swaps (-1: 2k)");
}

unsigned ThreadsFromEnv() {
  const char* env = std::getenv("RINGCORE_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw ConfigError("RINGCORE_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(v);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"coresets for clustering with assignment constraints", "ringcore"};
  app.require_subcommand(1);
  app.add_option("--threads", c.threads, "worker thread cap (0: hardware)");

  CLI::App* build = app.add_subcommand("build", "build a coreset");
  AddDataOptions(build, c);
  AddParamOptions(build, c);
  build->add_option("--out", c.out, "coreset JSON");
  build->add_option("--csv", c.csv, "optional CSV mirror");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a coreset against its dataset");
  AddDataOptions(eval, c);
  eval->add_option("--coreset", c.coreset, "coreset JSON from build");
  eval->add_option("--trials", c.trials, "center sets to draw");
  eval->add_option("--centers", c.centers, "centers per set (0: k of the coreset)");
  eval->add_option("--threshold", c.threshold, "max allowed error (0: eps of the coreset)");
  eval->add_option("--constraint", c.constraint, "none | induced | random | mixed");
  eval->add_option("--error", c.error, "relative | additive");
  eval->add_option("--seed", c.eval_seed, "harness seed");
  eval->add_option("--out", c.out, "report JSON");

  CLI::App* bench = app.add_subcommand("bench", "time builds on synthetic instances");
  AddParamOptions(bench, c);
  bench->add_option("--profile", c.profile, "gaussian | rings | tuples");
  bench->add_option("--sizes", c.sizes, "instance sizes")->delimiter(',');
  bench->add_option("--trials", c.trials, "evaluation trials per size");
  bench->add_option("--l", c.ell, "tuple length (tuples profile)");
  bench->add_option("--p", c.p, "Wasserstein power (tuples profile)");
  bench->add_option("--out", c.out, "table JSON");

  CLI::App* inspect = app.add_subcommand("inspect", "dump the ring decomposition");
  AddDataOptions(inspect, c);
  AddParamOptions(inspect, c);
  inspect->add_option("--out", c.out, "decomposition JSON (default: stdout)");

  for (CLI::App* sub : {build, eval, bench, inspect}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kConfigFailed};
  }

  try {
    if (c.threads == 0) c.threads = ThreadsFromEnv();
    SetThreadCap(c.threads);
    if (build->parsed()) return CmdBuild(c, out);
    if (eval->parsed()) return CmdEval(c, out);
    if (bench->parsed()) return CmdBench(c, out);
    return CmdInspect(c, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigFailed;
  }
}

}  // namespace ringcore::cli
