#include "fogsim/workload.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fogsim {
namespace {

using testing_util::data_path;

NetworkGraph located_graph(std::vector<std::pair<double, double>> coords) {
  std::vector<Node> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    nodes.push_back({"n" + std::to_string(i), coords[i].first, coords[i].second});
    if (i > 0) edges.emplace_back(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  }
  return NetworkGraph(nodes, edges);
}

std::vector<std::uint64_t> linear_scan_oracle(const NetworkGraph& g, const PopulationGrid& grid) {
  std::vector<std::uint64_t> out(g.node_count(), 0);
  for (const auto& cell : grid.cells) {
    NodeId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      // Spherical law of cosines; agrees with haversine away from antipodes.
      const double r = M_PI / 180.0;
      const double c = std::sin(cell.lat * r) * std::sin(g.node(v).lat * r) +
                       std::cos(cell.lat * r) * std::cos(g.node(v).lat * r) *
                           std::cos((cell.lon - g.node(v).lon) * r);
      const double d = 6371.0 * std::acos(std::clamp(c, -1.0, 1.0));
      if (d < best_d - 1e-9) {
        best_d = d;
        best = v;
      }
    }
    out[best] += cell.count;
  }
  return out;
}

const std::vector<double> kBitrates{20e6, 40e6, 60e6};

TEST(Workload, SingleCellGoesToNearestNode) {
  const auto g = located_graph({{60, 10}, {50, 0}, {40, 20}, {48.2, 16.4}, {35, -5}});
  PopulationGrid grid{{{48.0, 16.0, 500}}};
  const auto pops = assign_population(g, grid);
  EXPECT_THAT(pops, ::testing::ElementsAre(0, 0, 0, 500, 0));
}

TEST(Workload, EquidistantCellGoesToLowerId) {
  const auto g = located_graph({{40, 40}, {0, -1}, {0, 1}});
  PopulationGrid grid{{{0.0, 0.0, 7}}};
  EXPECT_THAT(assign_population(g, grid), ::testing::ElementsAre(0, 7, 0));
}

TEST(Workload, EmptyGridRejected) {
  const auto g = located_graph({{0, 0}, {1, 1}});
  EXPECT_THROW(assign_population(g, PopulationGrid{}), Error);
}

TEST(Workload, GeantFixtureMatchesLinearScan) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const PopulationGrid grid = load_population_file(data_path("geant_population.csv"));
  const auto pops = assign_population(g, grid);
  EXPECT_EQ(pops, linear_scan_oracle(g, grid));
  std::uint64_t total = 0;
  for (const auto& c : grid.cells) total += c.count;
  EXPECT_EQ(std::accumulate(pops.begin(), pops.end(), std::uint64_t{0}), total);
}

TEST(Workload, RandomGridsConservePopulation) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::pair<double, double>> coords;
    const std::size_t n = 2 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      coords.emplace_back(-60.0 + 120.0 * uniform01(rng), -170.0 + 340.0 * uniform01(rng));
    }
    const auto g = located_graph(coords);
    PopulationGrid grid;
    std::uint64_t total = 0;
    for (int c = 0; c < 200; ++c) {
      grid.cells.push_back({-60.0 + 120.0 * uniform01(rng), -170.0 + 340.0 * uniform01(rng),
                            rng() % 10000});
      total += grid.cells.back().count;
    }
    const auto pops = assign_population(g, grid);
    EXPECT_EQ(pops, linear_scan_oracle(g, grid));
    EXPECT_EQ(std::accumulate(pops.begin(), pops.end(), std::uint64_t{0}), total);
  }
}

TEST(Workload, PopulationParser) {
  std::istringstream ok("# comment\n\n1.5,2.5,10\n-3,4,0\n");
  const auto grid = load_population(ok);
  ASSERT_EQ(grid.cells.size(), 2u);
  EXPECT_DOUBLE_EQ(grid.cells[0].lon, 2.5);
  EXPECT_EQ(grid.cells[0].count, 10u);

  std::istringstream zero("1,2,0\n");
  EXPECT_THROW(load_population(zero), Error);
  std::istringstream bad("1,2\n");
  EXPECT_THROW(load_population(bad), Error);
  std::istringstream negative("1,2,-4\n3,4,5\n");
  EXPECT_THROW(load_population(negative), Error);
}

TEST(Workload, CatalogueSmallCases) {
  const auto one = build_catalogue(1, 0.8, kBitrates, 1);
  EXPECT_DOUBLE_EQ(one.item(1).probability, 1.0);
  const auto two = build_catalogue(2, 1.0, kBitrates, 1);
  EXPECT_NEAR(two.item(1).probability, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(two.item(2).probability, 1.0 / 3.0, 1e-15);
}

TEST(Workload, CatalogueHeadProbability) {
  double h = 0.0;
  for (int j = 1; j <= 1000; ++j) h += std::pow(j, -0.8);
  const auto cat = build_catalogue(1000, 0.8, kBitrates, 9);
  EXPECT_NEAR(cat.item(1).probability, 1.0 / h, 1e-12);
}

TEST(Workload, CatalogueIsValidDistribution) {
  for (double alpha : {0.1, 0.8, 1.0, 2.5}) {
    for (std::size_t n : {2u, 10u, 1000u}) {
      const auto cat = build_catalogue(n, alpha, kBitrates, n);
      double sum = 0.0;
      for (ItemId i = 1; i <= n; ++i) {
        sum += cat.item(i).probability;
        if (i > 1) EXPECT_LT(cat.item(i).probability, cat.item(i - 1).probability);
        EXPECT_THAT(kBitrates, ::testing::Contains(cat.item(i).bitrate));
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Workload, CatalogueRejectsBadArguments) {
  EXPECT_THROW(build_catalogue(0, 0.8, kBitrates, 1), Error);
  EXPECT_THROW(build_catalogue(10, -1.0, kBitrates, 1), Error);
  EXPECT_THROW(build_catalogue(10, 0.8, std::vector<double>{}, 1), Error);
}

TEST(Workload, SampledItemsFollowCatalogue) {
  const auto cat = build_catalogue(10, 0.8, kBitrates, 4);
  Rng rng(2024);
  const int draws = 100000;
  std::vector<int> counts(11, 0);
  for (int i = 0; i < draws; ++i) ++counts[cat.sample(rng)];
  double chi2 = 0.0;
  for (ItemId i = 1; i <= 10; ++i) {
    const double expected = draws * cat.item(i).probability;
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  // 99th percentile of chi-square with 9 degrees of freedom.
  EXPECT_LT(chi2, 21.666);
}

TEST(Workload, SingleNodeSingleItemDemand) {
  const std::vector<double> rate{20e6};
  const auto cat = build_catalogue(1, 0.8, rate, 1);
  const std::vector<std::uint64_t> pops{0, 10, 0};
  const auto d = draw_demand(pops, cat, 0.4, 70e9, 1);
  ASSERT_EQ(d.requests.size(), 1u);
  EXPECT_EQ(d.requests[0].node, 1u);
  EXPECT_EQ(d.requests[0].count, 3500u);
  EXPECT_DOUBLE_EQ(d.offered_bitrate, 70e9);
}

TEST(Workload, DemandErrorsAndEmptyLoad) {
  const auto cat = build_catalogue(10, 0.8, kBitrates, 1);
  const std::vector<std::uint64_t> zero{0, 0};
  EXPECT_THROW(draw_demand(zero, cat, 0.4, 70e9, 1), Error);
  const std::vector<std::uint64_t> pops{5, 5};
  EXPECT_THROW(draw_demand(pops, cat, 1.5, 70e9, 1), Error);
  EXPECT_THROW(draw_demand(pops, cat, 0.4, 0.0, 1), Error);
  const auto empty = draw_demand(pops, cat, 0.0, 70e9, 1);
  EXPECT_TRUE(empty.requests.empty());
  EXPECT_EQ(empty.offered_bitrate, 0.0);
}

TEST(Workload, DemandInvariantsAndDeterminism) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const auto pops = assign_population(g, load_population_file(data_path("geant_population.csv")));
  const auto cat = build_catalogue(1000, 0.8, kBitrates, 77);
  const auto a = draw_demand(pops, cat, 0.4, 70e9, 5);
  const auto b = draw_demand(pops, cat, 0.4, 70e9, 5);
  ASSERT_EQ(a.requests.size(), b.requests.size());
  double offered = 0.0;
  for (std::size_t i = 0; i < a.requests.size(); ++i) {
    EXPECT_EQ(a.requests[i].node, b.requests[i].node);
    EXPECT_EQ(a.requests[i].item, b.requests[i].item);
    EXPECT_EQ(a.requests[i].count, b.requests[i].count);
    EXPECT_GT(a.requests[i].count, 0u);
    if (i > 0) {
      const auto& p = a.requests[i - 1];
      const auto& q = a.requests[i];
      EXPECT_TRUE(p.node < q.node || (p.node == q.node && p.item < q.item));
    }
    EXPECT_GT(pops[a.requests[i].node], 0u);
    offered += a.requests[i].count * cat.item(a.requests[i].item).bitrate;
  }
  EXPECT_DOUBLE_EQ(a.offered_bitrate, offered);
}

TEST(Workload, MeanOfferedLoadIsCalibrated) {
  const NetworkGraph g = load_topology_file(data_path("geant2012.graphml"));
  const auto pops = assign_population(g, load_population_file(data_path("geant_population.csv")));
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto cat = build_catalogue(1000, 0.8, kBitrates, mix_seed(seed, 1));
    sum += draw_demand(pops, cat, 0.4, 70e9, mix_seed(seed, 2)).offered_bitrate;
  }
  EXPECT_NEAR(sum / 100.0, 70e9, 0.01 * 70e9);
}

TEST(Workload, GreatCircle) {
  EXPECT_NEAR(great_circle_km(0, 0, 0, 1), 6371.0 * M_PI / 180.0, 1e-9);
  EXPECT_NEAR(great_circle_km(51.5, -0.13, 48.85, 2.35), 343.0, 3.0);
}

}  // namespace
}  // namespace fogsim
