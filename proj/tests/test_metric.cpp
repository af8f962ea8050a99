#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

namespace ringcore {
namespace {

using testing::Line;
using testing::Points;
using testing::RandomPoints;

TEST(Euclidean, PythagoreanDistance) {
  EuclideanSpace s(2, {{0, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(Dist(s, PointId{0}, PointId{1}), 5.0);
}

TEST(Euclidean, InvalidHandleThrows) {
  EuclideanSpace s(2, {{0, 0}});
  EXPECT_THROW(Dist(s, PointId{0}, PointId{1}), Error);
  EXPECT_THROW(EuclideanSpace(2, {{0, 0, 0}}), Error);
}

TEST(Wasserstein, SymmetricExample) {
  WassersteinSpace s(2, 1.0, 2, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}});
  EXPECT_DOUBLE_EQ(Dist(s, PointId{0}, PointId{1}), 2.0);
}

TEST(Wasserstein, MatchesPermutationOracle) {
  Rng rng(7);
  std::normal_distribution<double> g;
  for (std::size_t ell = 1; ell <= 5; ++ell) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      std::vector<WassersteinSpace::Tuple> tuples;
      for (int t = 0; t < 12; ++t) {
        WassersteinSpace::Tuple tup(ell, Vec(2));
        for (Vec& v : tup) v = {g(rng), g(rng)};
        tuples.push_back(tup);
      }
      WassersteinSpace s(ell, p, 2, tuples);
      for (std::size_t a = 0; a < tuples.size(); ++a) {
        for (std::size_t b = 0; b < tuples.size(); ++b) {
          const double fast = s.distance(tuples[a], tuples[b]);
          const double slow = BruteWasserstein(tuples[a], tuples[b], p);
          EXPECT_TRUE(testing::RelClose(fast, slow, 1e-9)) << ell << " " << p << ": " << fast << " vs " << slow;
        }
      }
    }
  }
}

TEST(Wasserstein, FourTuplesSquaredAgainstAllPermutations) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    WassersteinSpace::Tuple a(4, Vec(3)), b(4, Vec(3));
    for (Vec& v : a) v = {u(rng), u(rng), u(rng)};
    for (Vec& v : b) v = {u(rng), u(rng), u(rng)};
    WassersteinSpace s(4, 2.0, 3, {a, b});
    EXPECT_TRUE(testing::RelClose(Dist(s, PointId{0}, PointId{1}), BruteWasserstein(a, b, 2.0), 1e-9));
  }
}

TEST(Wasserstein, LengthMismatchThrows) {
  EXPECT_THROW(WassersteinSpace(2, 1.0, 2, {{{0, 0}}}), Error);
  EXPECT_THROW(WassersteinSpace(2, 0.5, 2, {}), Error);
}

TEST(Frechet, KnownValues) {
  FrechetSpace s(1, {{{0}, {1}, {2}}, {{0}, {2}}, {{5}}});
  // Walking 0,1,2 against 0,2: the middle vertex pairs with 0 or 2 at distance 1.
  EXPECT_DOUBLE_EQ(Dist(s, PointId{0}, PointId{1}), 1.0);
  EXPECT_DOUBLE_EQ(Dist(s, PointId{0}, PointId{2}), 5.0);
  EXPECT_THROW(FrechetSpace(1, {{{0}, {1}, {2}}}, 2), Error);
}

TEST(Graph, ShortestPathsAndErrors) {
  // Path 0-1-2 plus an isolated edge 3-4.
  GraphSpace g(5, {{0, 1, 1.0}, {1, 2, 2.5}, {3, 4, 1.0}}, {0, 2});
  EXPECT_DOUBLE_EQ(Dist(g, PointId{0}, PointId{1}), 3.5);
  EXPECT_THROW(g.distance(0, 3), Error);
  try {
    g.distance(2, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unreachable");
  }
  EXPECT_THROW(GraphSpace(5, {{0, 1, 1.0}, {3, 4, 1.0}}, {0, 3}), Error);
  EXPECT_THROW(GraphSpace(2, {{0, 1, -1.0}}, {0}), Error);
  EXPECT_THROW(Dist(g, PointId{0}, PointId{2}), Error);
}

TEST(Graph, CacheIsBoundedAndThreadSafe) {
  std::vector<GraphSpace::Edge> edges;
  const std::uint32_t n = 300;
  for (std::uint32_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  std::vector<std::uint32_t> data(n);
  for (std::uint32_t v = 0; v < n; ++v) data[v] = v;
  GraphSpace g(n, edges, data, 8);
  std::vector<std::jthread> threads;
  std::atomic<int> wrong{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      Rng rng(static_cast<std::uint64_t>(t));
      for (int i = 0; i < 2000; ++i) {
        const std::uint32_t a = static_cast<std::uint32_t>(rng() % n), b = static_cast<std::uint32_t>(rng() % n);
        if (g.distance(a, b) != std::abs(static_cast<double>(a) - static_cast<double>(b))) ++wrong;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(wrong.load(), 0);
  EXPECT_LE(g.cached_sources(), 8u);
}

// Nonnegativity, identity, symmetry and triangle inequality on random triples.
template <SamplableSpace M>
void CheckMetricAxioms(const M& space, int triples, std::uint64_t seed) {
  Rng rng(seed);
  using P = typename M::point_type;
  auto draw = [&]() -> P {
    if (rng() % 2 == 0) return space.point(PointId{static_cast<std::size_t>(rng() % space.size())});
    return space.random_point(rng);
  };
  for (int t = 0; t < triples; ++t) {
    const P x = draw(), y = draw(), w = draw();
    const double xy = space.distance(x, y), yx = space.distance(y, x);
    const double xw = space.distance(x, w), yw = space.distance(y, w);
    ASSERT_GE(xy, 0.0);
    ASSERT_EQ(space.distance(x, x), 0.0);
    ASSERT_TRUE(testing::RelClose(xy, yx, 1e-12)) << xy << " " << yx;
    ASSERT_LE(xw, xy + yw + 1e-9 * std::max(1.0, xy + yw));
  }
}

TEST(MetricAxioms, Euclidean) {
  EuclideanSpace s(3, RandomPoints(200, 3, 1));
  CheckMetricAxioms(s, 10000, 2);
}

TEST(MetricAxioms, Graph) {
  Rng rng(3);
  const std::uint32_t n = 400;
  std::vector<GraphSpace::Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v) edges.push_back({v, static_cast<std::uint32_t>(rng() % v), 0.1 + Uniform01(rng)});
  for (int e = 0; e < 600; ++e) {
    edges.push_back({static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n), Uniform01(rng)});
  }
  std::vector<std::uint32_t> data;
  for (std::uint32_t v = 0; v < n; v += 2) data.push_back(v);
  GraphSpace g(n, edges, data, 64);
  CheckMetricAxioms(g, 10000, 4);
}

TEST(MetricAxioms, Wasserstein) {
  Rng rng(5);
  std::normal_distribution<double> gauss;
  std::vector<WassersteinSpace::Tuple> tuples(100, WassersteinSpace::Tuple(3, Vec(2)));
  for (auto& t : tuples) {
    for (Vec& v : t) v = {gauss(rng), gauss(rng)};
  }
  CheckMetricAxioms(WassersteinSpace(3, 2.0, 2, tuples), 10000, 6);
  CheckMetricAxioms(WassersteinSpace(3, 1.0, 2, tuples), 10000, 7);
}

TEST(MetricAxioms, Frechet) {
  Rng rng(8);
  std::normal_distribution<double> gauss;
  std::vector<FrechetSpace::Polyline> curves;
  for (int c = 0; c < 100; ++c) {
    FrechetSpace::Polyline line(1 + rng() % 6);
    for (Vec& v : line) v = {gauss(rng), gauss(rng)};
    curves.push_back(line);
  }
  CheckMetricAxioms(FrechetSpace(2, curves, 6), 10000, 9);
}

TEST(CostZ, KnownValues) {
  EuclideanSpace s = Line({0, 1, 2});
  const Points p = Points::All(s);
  EXPECT_DOUBLE_EQ(CostZ(p, {Vec{0}}, 1.0), 3.0);

  EuclideanSpace s2 = Line({0, 4});
  EXPECT_DOUBLE_EQ(CostZ(Points::All(s2), {Vec{0}, Vec{4}}, 2.0), 0.0);
  EXPECT_THROW(CostZ(p, {}, 1.0), Error);
}

TEST(CostZ, MatchesNaiveLoop) {
  EuclideanSpace s(2, RandomPoints(20, 2, 12));
  const Points p(s, testing::Handles(20), testing::RandomWeights(20, 13));
  const CenterList<Vec> c = RandomPoints(3, 2, 14);
  EXPECT_TRUE(testing::RelClose(CostZ(p, c, 2.0), testing::NaiveCost(p, c, 2.0), 1e-12));
}

TEST(CostZ, MonotoneInCenters) {
  EuclideanSpace s(2, RandomPoints(100, 2, 15));
  const Points p = Points::All(s);
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    CenterList<Vec> c = RandomPoints(1 + rng() % 4, 2, rng());
    const double before = CostZ(p, c, 1.5);
    const CenterList<Vec> extra = RandomPoints(1 + rng() % 3, 2, rng());
    c.insert(c.end(), extra.begin(), extra.end());
    EXPECT_LE(CostZ(p, c, 1.5), before);
  }
}

TEST(NearestCenter, TiesGoToLowestIndex) {
  EuclideanSpace s = Line({0});
  EXPECT_EQ(NearestCenter(s, Vec{0}, {Vec{1}, Vec{-1}, Vec{1}}).center, 0u);
}

TEST(RingIndex, KnownValues) {
  EXPECT_EQ(RingIndex(1.0), 0);
  EXPECT_EQ(RingIndex(3.0), 2);
  EXPECT_EQ(RingIndex(0.0), kCenterRing);
  EXPECT_EQ(RingIndex(2.0), 1);
  EXPECT_EQ(RingIndex(0.75), 0);
}

TEST(RingIndex, PartitionsPositiveReals) {
  Rng rng(17);
  std::uniform_real_distribution<double> expo(-30, 30);
  for (int i = 0; i < 100000; ++i) {
    const double d = std::exp2(expo(rng));
    const int r = RingIndex(d);
    ASSERT_LT(std::ldexp(1.0, r - 1), d);
    ASSERT_LE(d, std::ldexp(1.0, r));
  }
}

TEST(RingIndex, BoundarySnapsDown) {
  // Just above 2^0 but within the 1e-12 relative snap: treated as ring 0.
  EXPECT_EQ(RingIndex(1.0 + 1e-14), 0);
  EXPECT_EQ(RingIndex(1.0 + 1e-9), 1);
}

TEST(AvgRadius, KnownValues) {
  EuclideanSpace a = Line({0, 2});
  EXPECT_DOUBLE_EQ(AvgRadius(Points::All(a), Vec{0}, 1.0), 1.0);
  EuclideanSpace b = Line({0, 0, 2});
  EXPECT_NEAR(AvgRadius(Points::All(b), Vec{0}, 2.0), std::sqrt(4.0 / 3.0), 1e-12);
  EuclideanSpace c = Line({3, 3});
  EXPECT_EQ(AvgRadius(Points::All(c), Vec{3}, 1.0), 0.0);
  EXPECT_THROW(AvgRadius(Points(c, testing::Handles(2), {0.0, 0.0}), Vec{3}, 1.0), Error);
}

TEST(PointSet, ValidatesInputs) {
  EuclideanSpace s = Line({0, 1});
  EXPECT_THROW(Points(s, {PointId{0}}, {-1.0}), Error);
  EXPECT_THROW(Points(s, {PointId{5}}, {1.0}), Error);
  EXPECT_THROW(Points(s, {PointId{0}, PointId{1}}, {1.0, 1.0}, {{"a"}}), Error);
  const Points p(s, {PointId{0}, PointId{1}}, {1.0, 2.0}, {{"a"}, {}});
  const Points sub = p.Subset({1});
  EXPECT_EQ(sub.id(0).value, 1u);
  EXPECT_EQ(sub.weight(0), 2.0);
  EXPECT_TRUE(sub.labels(0).empty());
}

TEST(Params, Validation) {
  ClusteringParams p;
  EXPECT_NO_THROW(p.Validate());
  p.k = 0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = {};
  p.z = 0.5;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = {};
  p.eps = 1.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = {};
  p.delta = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(Threads, ParallelForIsDeterministicAndPropagates) {
  std::vector<int> out(1000);
  ParallelFor(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i % 97));
  EXPECT_THROW(ParallelFor(10, [](std::size_t i) {
                 if (i == 7) throw Error("boom");
               }),
               Error);
}

}  // namespace
}  // namespace ringcore
