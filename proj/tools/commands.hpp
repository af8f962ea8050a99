#ifndef RINGCORE_TOOLS_COMMANDS_HPP
#define RINGCORE_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "ringcore/ringcore.hpp"

namespace ringcore::cli {

enum ExitCode : int { kOk = 0, kThresholdFailed = 1, kParseFailed = 2, kConfigFailed = 3 };

struct RunConfig {
  std::string subcommand;

  // Input and backend.
  std::string input;
  std::string points;  // graph data vertices
  std::string backend = "euclidean";
  std::size_t ell = 0;  // 0: inferred from the first tuple
  double p = 1.0;
  std::size_t max_length = 0;  // polyline length cap, 0: none
  std::size_t cache = 256;
  double sdim = 0.0;  // 0: backend default

  ClusteringParams params;
  std::string mode = "vanilla";  // vanilla | assignment_preserving | fair
  BudgetConstants budget;
  double alpha_budget = 0.0;
  int repetitions = 0;
  int swaps = -1;

  // eval
  std::string coreset;
  int trials = 100;
  int centers = 0;          // 0: k from the coreset
  double threshold = 0.0;   // 0: eps from the coreset
  std::string constraint;   // none | induced | random | mixed; empty: by mode
  std::string error;        // relative | additive; empty: by coreset
  std::uint64_t eval_seed = 0;

  // bench
  std::string profile = "gaussian";  // gaussian | rings | tuples
  std::vector<std::size_t> sizes = {1000, 2000, 5000, 10000, 20000};

  std::string out;
  std::string csv;
  unsigned threads = 0;
};

// Parses `args` (without the program name) and runs the subcommand. Parse
// errors in input files return 2, unusable configurations 3.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int CmdBuild(const RunConfig& config, std::ostream& out);
int CmdEval(const RunConfig& config, std::ostream& out);
int CmdBench(const RunConfig& config, std::ostream& out);
int CmdInspect(const RunConfig& config, std::ostream& out);

}  // namespace ringcore::cli

#endif  // RINGCORE_TOOLS_COMMANDS_HPP
