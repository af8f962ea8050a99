#include <gtest/gtest.h>

#include "support.hpp"
#include "synth.hpp"

namespace ringcore {
namespace {

using testing::Line;
using testing::Points;
using testing::RelClose;

ReductionParams HugeErr(double z) {
  ReductionParams rp = MakeReductionParams(1.0, 1, z, 0.5);
  rp.err = 1e300;
  return rp;
}

TEST(ReductionParams, KnownValues) {
  const ReductionParams rp = MakeReductionParams(100.0, 2, 1.0, 0.5);
  EXPECT_EQ(rp.t, 9);
  EXPECT_NEAR(rp.err, 25.0 / 54.0, 1e-15);
  const ReductionParams zero = MakeReductionParams(0.0, 2, 1.0, 0.5);
  EXPECT_EQ(zero.err, 0.0);
  EXPECT_GE(MakeReductionParams(1.0, 1, 1.0, 0.99).t, 3);
}

TEST(ReductionParams, FromPointSet) {
  EuclideanSpace s = Line({1, 2, 3});
  ClusteringParams p;
  p.k = 2;
  p.eps = 0.5;
  const ReductionParams rp = MakeReductionParams(Points::All(s), Vec{0}, p);
  EXPECT_EQ(rp.cost, 6.0);
  EXPECT_NEAR(rp.err, (0.5 / 6.0) * 6.0 / 18.0, 1e-15);
}

TEST(Decompose, TwoPointLinearExample) {
  EuclideanSpace s = Line({1, 2, 3});
  const auto dec = Decompose(Points::All(s), Vec{0}, HugeErr(1.0));
  ASSERT_EQ(dec.groups.size(), 1u);
  ASSERT_EQ(dec.z_coreset.size(), 2u);
  EXPECT_EQ(dec.z_coreset[0].member, 0u);
  EXPECT_NEAR(dec.z_coreset[0].weight, 1.5, 1e-15);
  EXPECT_EQ(dec.z_coreset[1].member, 2u);
  EXPECT_NEAR(dec.z_coreset[1].weight, 1.5, 1e-15);
  EXPECT_EQ(dec.z_coreset[0].origin, Origin::kTwoPoint);
}

TEST(Decompose, TwoPointSquaredExample) {
  EuclideanSpace s = Line({1, std::sqrt(2.0), 2});
  const auto dec = Decompose(Points::All(s), Vec{0}, HugeErr(2.0));
  ASSERT_EQ(dec.z_coreset.size(), 2u);
  EXPECT_NEAR(dec.z_coreset[0].weight, 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(dec.z_coreset[1].weight, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(dec.z_coreset[0].weight * 1.0 + dec.z_coreset[1].weight * 4.0, 7.0, 1e-12);
}

TEST(Decompose, SinglePointGroup) {
  EuclideanSpace s = Line({5});
  const auto dec = Decompose(Points(s, {PointId{0}}, {2.5}), Vec{0}, HugeErr(1.0));
  ASSERT_EQ(dec.z_coreset.size(), 1u);
  EXPECT_EQ(dec.two_point[0].close, dec.two_point[0].far);
  EXPECT_EQ(dec.z_coreset[0].weight, 2.5);
}

TEST(Decompose, PointsAtCenterCollapse) {
  EuclideanSpace s = Line({0, 0, 0});
  const Points p(s, testing::Handles(3), {1, 2, 3});
  const auto dec = Decompose(p, Vec{0}, MakeReductionParams(p, Vec{0}, ClusteringParams{}));
  EXPECT_EQ(dec.params.err, 0.0);
  EXPECT_TRUE(dec.rings.empty());
  ASSERT_EQ(dec.z_coreset.size(), 1u);
  EXPECT_EQ(dec.z_coreset[0].weight, 6.0);
  EXPECT_EQ(dec.z_coreset[0].origin, Origin::kCenterMass);
}

TEST(Decompose, TiesPickLowestIndex) {
  EuclideanSpace s = Line({2, 1, 1, 2});
  const auto dec = Decompose(Points::All(s), Vec{0}, HugeErr(1.0));
  EXPECT_EQ(dec.two_point[0].close, 1u);
  EXPECT_EQ(dec.two_point[0].far, 0u);
}

TEST(CountBounds, UniformRingHasOneBucket) {
  EuclideanSpace s(2, synth::RingPoints(300, {0, 0}, 1.0, 51));
  const auto dec = Decompose(Points::All(s), Vec{0, 0}, HugeErr(1.0));
  const StructuralReport rep = CountBounds(dec);
  EXPECT_EQ(rep.heavy, 0u);
  EXPECT_EQ(rep.buckets, 1u);
  EXPECT_TRUE(rep.ok());
}

TEST(CountBounds, ConcentratedCostPigeonhole) {
  // Cost split over three rings, err = cost / 3.
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(1.5);
  for (int i = 0; i < 5; ++i) xs.push_back(3.0);
  for (int i = 0; i < 2; ++i) xs.push_back(7.5);
  EuclideanSpace s = Line(xs);
  const Points p = Points::All(s);
  ReductionParams rp = MakeReductionParams(p, Vec{0}, ClusteringParams{});
  rp.err = rp.cost / 3.0;
  const StructuralReport rep = CountBounds(Decompose(p, Vec{0}, rp));
  EXPECT_LE(rep.heavy, 3u);
  EXPECT_TRUE(rep.ok());
}

// Partition, heavy count, group cost, two-point exactness and ring
// membership on random instances.
void CheckDecomposition(const Points& p, const RingDecomposition<EuclideanSpace>& dec, double z) {
  const StructuralReport rep = CountBounds(dec);
  EXPECT_TRUE(rep.heavy_ok) << rep.heavy << " > " << rep.heavy_bound;
  EXPECT_TRUE(rep.groups_ok) << rep.groups << " > " << rep.group_bound;
  EXPECT_TRUE(rep.group_cost_ok);

  std::vector<int> seen(p.size(), 0);
  for (std::size_t m : dec.at_center) ++seen[m];
  double w_z = 0.0;
  for (std::size_t m : dec.at_center) w_z += p.weight(m);
  for (const Ring& r : dec.rings) {
    for (std::size_t m : r.members) {
      if (r.heavy) ++seen[m];
      EXPECT_GT(dec.distances[m], r.inner_radius() * (1 - 1e-12));
      EXPECT_LE(dec.distances[m], 2 * r.inner_radius() * (1 + 1e-12));
    }
  }
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    const Group& grp = dec.groups[g];
    if (g > 0) EXPECT_GT(grp.lo, dec.groups[g - 1].hi);
    EXPECT_LE(grp.cost, dec.params.err * (1 + 1e-9));
    double w = 0.0, cost = 0.0;
    for (std::size_t m : grp.members) {
      ++seen[m];
      w += p.weight(m);
      cost += p.weight(m) * std::pow(dec.distances[m], z);
    }
    w_z += w;
    const TwoPointCoreset& tp = dec.two_point[g];
    EXPECT_TRUE(RelClose(tp.w_close + tp.w_far, w, 1e-9));
    const double tp_cost = tp.w_close * std::pow(dec.distances[tp.close], z) + tp.w_far * std::pow(dec.distances[tp.far], z);
    EXPECT_TRUE(RelClose(tp_cost, cost, 1e-9));
    EXPECT_GE(tp.w_close, 0.0);
    EXPECT_GE(tp.w_far, -1e-9 * w);
  }
  for (int v : seen) EXPECT_EQ(v, 1);
  double w_s = 0.0;
  for (const CoresetEntry& e : dec.z_coreset) w_s += e.weight;
  EXPECT_TRUE(RelClose(w_s, w_z, 1e-12));
}

TEST(Decompose, RandomInstancesSatisfyInvariants) {
  Rng rng(52);
  for (int inst = 0; inst < 40; ++inst) {
    const std::size_t n = 100 + rng() % 900;
    const int k = 1 + static_cast<int>(rng() % 5);
    const double z = inst % 2 ? 2.0 : 1.0;
    const double eps = std::vector<double>{0.1, 0.2, 0.5}[rng() % 3];
    EuclideanSpace s(2, synth::RingStress(n, 2, 1, rng()));
    const Points p(s, testing::Handles(n), testing::RandomWeights(n, rng()));
    const Vec c = p.point(rng() % n);
    const ReductionParams rp = MakeReductionParams(CostToCenter(p, c, z), k, z, eps);
    CheckDecomposition(p, Decompose(p, c, rp), z);
  }
}

// Additive contract on Z: for random C and Gamma,
// |cost(Z, C, Gamma) - cost(S_Z, C, Gamma)| <= eps (cost(Z, C, Gamma) + cost(P, c)).
TEST(Decompose, AdditiveGuaranteeOnUnmarkedPart) {
  Rng rng(53);
  for (int inst = 0; inst < 6; ++inst) {
    const int k = 2 + inst % 2;
    const double eps = 0.2, z = 1.0;
    EuclideanSpace s(2, synth::RingStress(400, 2, 1, rng()));
    const Points p = Points::All(s);
    const Vec c = p.point(0);
    const ReductionParams rp = MakeReductionParams(CostToCenter(p, c, z), k, z, eps);
    const auto dec = Decompose(p, c, rp);
    std::vector<std::size_t> z_members = dec.at_center;
    for (const Group& g : dec.groups) z_members.insert(z_members.end(), g.members.begin(), g.members.end());
    if (z_members.empty()) continue;
    const Points zset = p.Subset(z_members);
    std::vector<PointId> ids;
    std::vector<double> w;
    for (const CoresetEntry& e : dec.z_coreset) {
      ids.push_back(p.id(e.member));
      w.push_back(e.weight);
    }
    const Points sz(s, ids, w);
    for (int trial = 0; trial < 20; ++trial) {
      CenterList<Vec> centers;
      for (int j = 0; j < k; ++j) centers.push_back(s.perturb(c, std::ldexp(1.0, static_cast<int>(rng() % 12) - 2), rng));
      const auto gamma = trial % 2 ? InducedConstraint(zset, centers)
                                   : RandomConstraint(centers, zset.total_weight(), rng());
      const double cz = SolveTransport(zset, gamma, z).objective;
      const double cs = SolveTransport(sz, gamma, z).objective;
      EXPECT_LE(std::abs(cz - cs), eps * (cz + rp.cost)) << inst << "/" << trial;
    }
  }
}

TEST(ReduceK1, Thresholds) {
  EuclideanSpace s = Line({1});
  const auto red = SplitK1(Points::All(s), Vec{0}, 0.3, 1.0, 1.0);
  EXPECT_NEAR(red.close_threshold, 0.05, 1e-15);
  EXPECT_NEAR(red.far_threshold, 120.0 / 0.09, 1e-9);
}

TEST(ReduceK1, EquidistantPointsFormOneRing) {
  std::vector<Vec> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({3 * std::cos(i * 0.5), 3 * std::sin(i * 0.5)});
  EuclideanSpace s(2, pts);
  ClusteringParams params;
  params.eps = 0.3;
  const auto red = ReduceK1(Points::All(s), Vec{0, 0}, params);
  EXPECT_TRUE(red.close.empty());
  EXPECT_TRUE(red.far.empty());
  EXPECT_TRUE(red.s.empty());
  EXPECT_EQ(red.w_rings.size(), 1u);
}

TEST(ReduceK1, FarPointsKeepTheirWeights) {
  EuclideanSpace s = Line({1, 2000, 4000});
  const auto red = SplitK1(Points::All(s), Vec{0}, 0.3, 1.0, 1.0);
  ASSERT_EQ(red.s.size(), 2u);
  EXPECT_EQ(red.s[0].member, 1u);
  EXPECT_DOUBLE_EQ(red.s[0].weight, 1.0);
  EXPECT_EQ(red.s[1].member, 2u);
  EXPECT_DOUBLE_EQ(red.s[1].weight, 1.0);
}

TEST(ReduceK1, RequiresKOne) {
  EuclideanSpace s = Line({1});
  ClusteringParams params;
  params.k = 2;
  EXPECT_THROW(ReduceK1(Points::All(s), Vec{0}, params), ConfigError);
}

TEST(ReduceK1, AtMostThreePointsAndWeightConserved) {
  Rng rng(54);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 20 + rng() % 500;
    EuclideanSpace s(2, synth::RingStress(n, 2, 1, rng()));
    const Points p(s, testing::Handles(n), testing::RandomWeights(n, rng()));
    ClusteringParams params;
    params.eps = std::vector<double>{0.1, 0.2, 0.5}[rng() % 3];
    params.z = inst % 2 ? 2.0 : 1.0;
    const auto red = ReduceK1(p, p.point(rng() % n), params);
    EXPECT_LE(red.s.size(), 3u);
    double w_cf = 0.0, w_s = 0.0;
    for (std::size_t m : red.close) w_cf += p.weight(m);
    for (std::size_t m : red.far) w_cf += p.weight(m);
    for (const CoresetEntry& e : red.s) w_s += e.weight;
    EXPECT_TRUE(RelClose(w_s, w_cf, 1e-12));
    std::size_t in_rings = 0;
    for (const Ring& r : red.w_rings) in_rings += r.members.size();
    EXPECT_EQ(in_rings + red.close.size() + red.far.size(), n);
  }
}

}  // namespace
}  // namespace ringcore
