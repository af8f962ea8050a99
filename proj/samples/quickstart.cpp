// Build a k-median coreset for a synthetic mixture and compare costs on a few
// random center sets.
#include <cstdio>

#include "ringcore/ringcore.hpp"
#include "synth.hpp"

int main() {
  using namespace ringcore;
  EuclideanSpace space(2, synth::GaussianMixture(20000, 2, 4, 7));
  const auto data = WeightedPointSet<EuclideanSpace>::All(space);

  ClusteringParams params;
  params.k = 4;
  params.z = 1.0;
  params.eps = 0.2;
  params.seed = 7;
  ComposerConfig config;
  config.budget.c1 = 1e-5;  // default constants keep small inputs uncompressed
  const auto coreset = BuildCoreset(data, params, CoresetMode::kVanilla, config);
  std::printf("%zu points -> %zu (bound %.3g)\n", data.size(), coreset.points.size(),
              coreset.accounting.size_bound);

  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    CenterList<Vec> centers;
    for (int j = 0; j < params.k; ++j) centers.push_back(space.random_point(rng));
    const double full = CostZ(data, centers, params.z), small = CostZ(coreset.points, centers, params.z);
    std::printf("cost %.2f vs %.2f (rel %.4f)\n", full, small, RelativeError(full, small));
  }
}
