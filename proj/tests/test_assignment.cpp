#include <gtest/gtest.h>

#include "support.hpp"

namespace ringcore {
namespace {

using testing::Line;
using testing::Points;
using testing::RandomPoints;
using testing::RelClose;

AssignmentConstraint<Vec> Gamma(CenterList<Vec> c, std::vector<double> m) { return {std::move(c), std::move(m)}; }

void CheckPlan(const Points& p, const AssignmentConstraint<Vec>& gamma, double z, const TransportPlan& plan) {
  std::vector<double> rows(p.size(), 0.0), cols(gamma.centers.size(), 0.0);
  double objective = 0.0;
  for (const auto& e : plan.entries) {
    ASSERT_GE(e.mass, 0.0);
    rows[e.point] += e.mass;
    cols[e.center] += e.mass;
    objective += e.mass * std::pow(p.space().distance(p.point(e.point), gamma.centers[e.center]), z);
  }
  const double scale = p.total_weight() / gamma.total();
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_TRUE(RelClose(rows[i], p.weight(i), 1e-9));
  for (std::size_t j = 0; j < cols.size(); ++j) EXPECT_TRUE(RelClose(cols[j], gamma.masses[j] * scale, 1e-9));
  EXPECT_TRUE(RelClose(objective, plan.objective, 1e-9));
}

TEST(SolveTransport, KnownValues) {
  EuclideanSpace s = Line({0, 1});
  const Points p = Points::All(s);
  EXPECT_DOUBLE_EQ(SolveTransport(p, Gamma({Vec{0}, Vec{1}}, {1, 1}), 1.0).objective, 0.0);
  EXPECT_DOUBLE_EQ(SolveTransport(p, Gamma({Vec{0}, Vec{1}}, {2, 0}), 1.0).objective, 1.0);
}

TEST(SolveTransport, MassMismatchAndRenormalization) {
  EuclideanSpace s = Line({0, 1});
  const Points p = Points::All(s);
  try {
    SolveTransport(p, Gamma({Vec{0}}, {3}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "mass mismatch");
  }
  // Within 1e-6 of w(P): accepted and rescaled.
  const TransportPlan plan = SolveTransport(p, Gamma({Vec{0}, Vec{1}}, {2 + 1e-7, 0}), 1.0);
  EXPECT_NEAR(plan.objective, 1.0, 1e-12);
  EXPECT_THROW(SolveTransport(p, Gamma({}, {}), 1.0), Error);
  EXPECT_THROW(SolveTransport(p, Gamma({Vec{0}, Vec{1}}, {3, -1}), 1.0), Error);
}

// Integer instances against the enumeration oracle.
TEST(SolveTransport, MatchesBruteForceOnIntegralInstances) {
  Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 5, k = 1 + rng() % 3;
    EuclideanSpace s(2, RandomPoints(n, 2, rng()));
    std::vector<double> w(n);
    int total = 0;
    for (double& x : w) total += static_cast<int>(x = static_cast<double>(1 + rng() % 2));
    const Points p(s, testing::Handles(n), w);
    std::vector<double> masses(k, 0.0);
    for (int u = 0; u < total; ++u) masses[rng() % k] += 1.0;
    const auto gamma = Gamma(RandomPoints(k, 2, rng()), masses);
    const double z = trial % 2 ? 2.0 : 1.0;
    const TransportPlan plan = SolveTransport(p, gamma, z);
    EXPECT_TRUE(RelClose(plan.objective, BruteTransport(p, gamma, z), 1e-9)) << trial;
    CheckPlan(p, gamma, z, plan);
  }
}

TEST(SolveTransport, InducedConstraintRecoversUnconstrainedCost) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 10 + rng() % 60, k = 1 + rng() % 6;
    EuclideanSpace s(2, RandomPoints(n, 2, rng()));
    const Points p(s, testing::Handles(n), testing::RandomWeights(n, rng()));
    const CenterList<Vec> c = RandomPoints(k, 2, rng());
    const double z = 1.0 + static_cast<double>(trial % 3) * 0.5;
    const auto gamma = InducedConstraint(p, c);
    const TransportPlan plan = SolveTransport(p, gamma, z);
    EXPECT_TRUE(RelClose(plan.objective, CostZ(p, c, z), 1e-9));
    CheckPlan(p, gamma, z, plan);
  }
}

// Any feasible plan costs at least the solver's optimum.
TEST(SolveTransport, OptimumLowerBoundsFeasiblePlans) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + rng() % 20, k = 2 + rng() % 4;
    EuclideanSpace s(2, RandomPoints(n, 2, rng()));
    const Points p(s, testing::Handles(n), testing::RandomWeights(n, rng()));
    const auto gamma = RandomConstraint(RandomPoints(k, 2, rng()), p.total_weight(), rng());
    const double best = SolveTransport(p, gamma, 1.0).objective;
    for (int rep = 0; rep < 10; ++rep) {
      // Greedy fill in a random point order.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<double> left = gamma.masses;
      double cost = 0.0;
      for (std::size_t i : order) {
        double need = p.weight(i);
        for (std::size_t j = 0; j < k && need > 0.0; ++j) {
          const double x = std::min(need, left[j]);
          cost += x * s.distance(p.point(i), gamma.centers[j]);
          left[j] -= x;
          need -= x;
        }
        if (need > 1e-9) cost += need * s.distance(p.point(i), gamma.centers[k - 1]);
      }
      EXPECT_LE(best, cost * (1.0 + 1e-9));
    }
  }
}

TEST(SolveTransport, ScalesLinearly) {
  EuclideanSpace s(2, RandomPoints(30, 2, 24));
  const std::vector<double> w = testing::RandomWeights(30, 25);
  const Points p(s, testing::Handles(30), w);
  const auto gamma = RandomConstraint(RandomPoints(4, 2, 26), p.total_weight(), 27);
  std::vector<double> w3 = w, m3 = gamma.masses;
  for (double& x : w3) x *= 3.0;
  for (double& x : m3) x *= 3.0;
  const Points p3(s, testing::Handles(30), w3);
  EXPECT_TRUE(RelClose(SolveTransport(p3, Gamma(gamma.centers, m3), 2.0).objective,
                       3.0 * SolveTransport(p, gamma, 2.0).objective, 1e-9));
}

TEST(SolveTransport, ShortestPathsAgreesWithSimplex) {
  Rng rng(28);
  TransportOptions ssp;
  ssp.dense_cell_limit = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng() % 80, k = 1 + rng() % 7;
    EuclideanSpace s(2, RandomPoints(n, 2, rng()));
    const Points p(s, testing::Handles(n), testing::RandomWeights(n, rng()));
    const auto gamma = RandomConstraint(RandomPoints(k, 2, rng()), p.total_weight(), rng());
    const TransportPlan a = SolveTransport(p, gamma, 1.0);
    const TransportPlan b = SolveTransport(p, gamma, 1.0, ssp);
    EXPECT_TRUE(RelClose(a.objective, b.objective, 1e-9)) << a.objective << " " << b.objective;
    CheckPlan(p, gamma, 1.0, b);
  }
}

TEST(SolveTransport, ZeroMassCentersAndDuplicates) {
  EuclideanSpace s = Line({0, 0, 5, 5, 5});
  const Points p = Points::All(s);
  const auto gamma = Gamma({Vec{0}, Vec{5}, Vec{100}}, {2, 3, 0});
  EXPECT_DOUBLE_EQ(SolveTransport(p, gamma, 1.0).objective, 0.0);
  const auto gamma2 = Gamma({Vec{0}, Vec{0}, Vec{5}}, {1, 1, 3});
  EXPECT_DOUBLE_EQ(SolveTransport(p, gamma2, 2.0).objective, 0.0);
}

TEST(SolveTransport, DeterministicAndDegenerateSafe) {
  // Many ties: all points and centers on a small integer grid.
  std::vector<Vec> pts;
  for (int i = 0; i < 60; ++i) pts.push_back({static_cast<double>(i % 3), static_cast<double>(i % 2)});
  EuclideanSpace s(2, pts);
  const Points p = Points::All(s);
  const auto gamma = Gamma({Vec{0, 0}, Vec{1, 1}, Vec{2, 0}, Vec{0, 1}}, {15, 15, 15, 15});
  const TransportPlan a = SolveTransport(p, gamma, 1.0), b = SolveTransport(p, gamma, 1.0);
  EXPECT_EQ(a.ToCsv(), b.ToCsv());
  CheckPlan(p, gamma, 1.0, a);
}

TEST(SolveTransport, CsvExport) {
  EuclideanSpace s = Line({0, 1});
  const TransportPlan plan = SolveTransport(Points::All(s), Gamma({Vec{0}}, {2}), 1.0);
  EXPECT_EQ(plan.ToCsv(), "point,center,mass\n0,0,1\n1,0,1\n");
}

TEST(InducedConstraint, KnownValues) {
  EuclideanSpace a = Line({0, 10});
  EXPECT_EQ(InducedConstraint(Points::All(a), {Vec{0}, Vec{10}}).masses, (std::vector<double>{1, 1}));
  EuclideanSpace b = Line({0, 1, 2});
  EXPECT_EQ(InducedConstraint(Points::All(b), {Vec{0}}).masses, (std::vector<double>{3}));
  EuclideanSpace c(2, RandomPoints(30, 2, 29));
  const Points p(c, testing::Handles(30), testing::RandomWeights(30, 30));
  EXPECT_TRUE(RelClose(InducedConstraint(p, RandomPoints(4, 2, 31)).total(), p.total_weight(), 1e-12));
  // Tie at the midpoint goes to the lower index.
  EuclideanSpace d = Line({5});
  EXPECT_EQ(InducedConstraint(Points::All(d), {Vec{0}, Vec{10}}).masses, (std::vector<double>{1, 0}));
}

TEST(RandomConstraint, KnownValues) {
  EXPECT_EQ(RandomConstraint(CenterList<Vec>{Vec{0}}, 7.0, 1).masses, (std::vector<double>{7.0}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = RandomConstraint(CenterList<Vec>{Vec{0}, Vec{1}, Vec{2}}, 9.0, seed);
    for (double m : g.masses) EXPECT_GE(m, 0.0);
    EXPECT_NEAR(g.total(), 9.0, 1e-9);
  }
  EXPECT_EQ(RandomConstraint(CenterList<Vec>{Vec{0}, Vec{1}}, 2.0, 5).masses,
            RandomConstraint(CenterList<Vec>{Vec{0}, Vec{1}}, 2.0, 5).masses);
  EXPECT_THROW(RandomConstraint(CenterList<Vec>{Vec{0}}, 0.0, 1), Error);
}

}  // namespace
}  // namespace ringcore
