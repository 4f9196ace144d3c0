#include "fogsim/placement.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "fogsim/workload.h"
#include "test_util.h"

namespace fogsim {
namespace {

using testing_util::data_path;

TEST(Placement, AllNodesWhenKEqualsSize) {
  const std::vector<double> w{1, 2, 3, 4, 5};
  EXPECT_THAT(place_points(w, 5, 42), ::testing::ElementsAre(0, 1, 2, 3, 4));
}

TEST(Placement, ZeroWeightNeverChosen) {
  const std::vector<double> w{1, 0, 0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_THAT(place_points(w, 1, seed), ::testing::ElementsAre(0));
  }
  EXPECT_THROW(place_points(w, 2, 1), Error);
}

TEST(Placement, ProportionalFrequency) {
  const std::vector<double> w{3, 1};
  int a = 0;
  const int seeds = 100000;
  for (int seed = 0; seed < seeds; ++seed) {
    if (place_points(w, 1, static_cast<std::uint64_t>(seed)).front() == 0) ++a;
  }
  EXPECT_NEAR(static_cast<double>(a) / seeds, 0.75, 0.01);
}

TEST(Placement, SecondDrawIsConditionalOnFirst) {
  // P(first two = {0, 1}) with weights {2, 1, 1}: 2/4 * 1/2 + 1/4 * 2/3 = 5/12.
  const std::vector<double> w{2, 1, 1};
  int hits = 0;
  const int seeds = 60000;
  for (int seed = 0; seed < seeds; ++seed) {
    auto p = place_points(w, 2, static_cast<std::uint64_t>(seed));
    if (p == std::vector<NodeId>{0, 1}) ++hits;
  }
  EXPECT_NEAR(static_cast<double>(hits) / seeds, 5.0 / 12.0, 0.01);
}

TEST(Placement, DistinctAndDeterministic) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<double> w(n);
    for (auto& x : w) x = (rng() % 4 == 0) ? 0.0 : uniform01(rng) * 10.0;
    const auto positive = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double x) { return x > 0; }));
    if (positive == 0) continue;
    const std::size_t k = 1 + rng() % positive;
    const auto p = place_points(w, k, round);
    ASSERT_EQ(p.size(), k);
    EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
    EXPECT_EQ(std::adjacent_find(p.begin(), p.end()), p.end());
    for (NodeId v : p) EXPECT_GT(w[v], 0.0);
    EXPECT_EQ(p, place_points(w, k, round));
  }
}

TEST(Placement, PlaceAllShapes) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const HopTable hops(g);
  const auto pops = assign_population(g, load_population_file(data_path("geant_population.csv")));
  const PlacementConfig cfg{PlacementMode::Pop, 2, 2, 0};
  const auto p = place_all(hops, pops, cfg, 99);
  EXPECT_EQ(p.fog.size(), 2u);
  EXPECT_EQ(p.cloud.size(), 2u);
  EXPECT_TRUE(p.ldns.empty());
  const auto q = place_all(hops, pops, cfg, 99);
  EXPECT_EQ(p.fog, q.fog);
  EXPECT_EQ(p.cloud, q.cloud);
  EXPECT_EQ(p.fog, place_points(hops, pops, PlacementMode::Pop, 2, 99 ^ kFogSalt));
  EXPECT_EQ(p.cloud, place_points(hops, pops, PlacementMode::Pop, 2, 99 ^ kCloudSalt));
}

TEST(Placement, ClosenessWeights) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const HopTable hops(g);
  const std::vector<std::uint64_t> pops(g.node_count(), 1);
  const auto w = placement_weights(PlacementMode::Cls, hops, pops);
  for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_DOUBLE_EQ(w[v], closeness(hops, v));
}

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = (i + j) / 2.0;
    i = j + 1;
  }
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(Placement, PopFrequencyTracksPopulation) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const HopTable hops(g);
  const auto pops = assign_population(g, load_population_file(data_path("geant_population.csv")));
  std::vector<double> freq(g.node_count(), 0.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (NodeId v : place_points(hops, pops, PlacementMode::Pop, 8, seed)) freq[v] += 1.0;
  }
  const std::vector<double> pop(pops.begin(), pops.end());
  EXPECT_GT(pearson(ranks(freq), ranks(pop)), 0.5);
}

TEST(Placement, ModeParsing) {
  EXPECT_EQ(parse_placement_mode("pop"), PlacementMode::Pop);
  EXPECT_EQ(parse_placement_mode("Cls"), PlacementMode::Cls);
  EXPECT_THROW(parse_placement_mode("random"), Error);
  EXPECT_EQ(to_string(PlacementMode::Cls), "cls");
}

}  // namespace
}  // namespace fogsim
