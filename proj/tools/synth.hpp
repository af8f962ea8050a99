#ifndef RINGCORE_TOOLS_SYNTH_HPP
#define RINGCORE_TOOLS_SYNTH_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ringcore/common.hpp"
#include "ringcore/metric.hpp"

// Synthetic instances for benches and tests. All draws come from `seed`.
namespace ringcore::synth {

// n points in R^dim from `components` isotropic Gaussians with means uniform
// in [0, spread]^dim and standard deviations in [1, 3]. Points are dealt to
// components round-robin.
inline std::vector<Vec> GaussianMixture(std::size_t n, std::size_t dim, std::size_t components, std::uint64_t seed,
                                        double spread = 100.0) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mean(0.0, spread), sd(1.0, 3.0);
  std::normal_distribution<double> gauss;
  std::vector<Vec> means(components, Vec(dim));
  std::vector<double> sds(components);
  for (std::size_t c = 0; c < components; ++c) {
    for (double& x : means[c]) x = mean(rng);
    sds[c] = sd(rng);
  }
  std::vector<Vec> pts(n, Vec(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % components;
    for (std::size_t d = 0; d < dim; ++d) pts[i][d] = means[c][d] + sds[c] * gauss(rng);
  }
  return pts;
}

inline Vec RandomDirection(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  Vec v(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      norm += x * x;
    }
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

// n points in ring(center, inner, 2 inner) with radii uniform in (inner, 2 inner].
inline std::vector<Vec> RingPoints(std::size_t n, const Vec& center, double inner, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = inner * (2.0 - Uniform01(rng));
    Vec p = RandomDirection(center.size(), rng);
    for (std::size_t d = 0; d < p.size(); ++d) p[d] = center[d] + r * p[d];
    pts.push_back(std::move(p));
  }
  return pts;
}

// Ring-stress family: around `components` centers, radii spread over many
// dyadic scales with geometrically decaying counts, so every cluster has
// heavy rings, light rings and far outliers.
inline std::vector<Vec> RingStress(std::size_t n, std::size_t dim, std::size_t components, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mean(0.0, 1e4);
  std::vector<Vec> means(components, Vec(dim));
  for (Vec& m : means) {
    for (double& x : m) x = mean(rng);
  }
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < n; ++i) {
    // Scale 2^j with P(j) proportional to 2^{-j/2}, j in [-6, 10].
    int j = -6;
    while (j < 10 && Uniform01(rng) < 0.7) ++j;
    const double r = std::ldexp(1.0 + Uniform01(rng), j);
    Vec p = RandomDirection(dim, rng);
    const Vec& c = means[i % components];
    for (std::size_t d = 0; d < dim; ++d) p[d] = c[d] + r * p[d];
    pts.push_back(std::move(p));
  }
  return pts;
}

// n l-tuples in R^dim: a few base tuples, each copy jittered point-wise.
inline std::vector<std::vector<Vec>> TupleCloud(std::size_t n, std::size_t ell, std::size_t dim, std::uint64_t seed,
                                                std::size_t bases = 3) {
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<Vec>> base(bases, std::vector<Vec>(ell, Vec(dim)));
  for (auto& t : base) {
    for (Vec& v : t) {
      for (double& x : v) x = coord(rng);
    }
  }
  std::vector<std::vector<Vec>> tuples;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> t = base[i % bases];
    const double scale = std::exp(gauss(rng));  // heavy-ish tail of spreads
    for (Vec& v : t) {
      for (double& x : v) x += scale * gauss(rng);
    }
    tuples.push_back(std::move(t));
  }
  return tuples;
}

}  // namespace ringcore::synth

#endif  // RINGCORE_TOOLS_SYNTH_HPP
