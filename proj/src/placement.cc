#include "fogsim/placement.h"

#include <algorithm>
#include <string>

namespace fogsim {

PlacementMode parse_placement_mode(std::string_view text) {
  if (text == "pop" || text == "Pop") return PlacementMode::Pop;
  if (text == "cls" || text == "Cls") return PlacementMode::Cls;
  throw Error("unknown placement mode '" + std::string(text) + "' (expected pop|cls)");
}

std::string_view to_string(PlacementMode mode) {
  return mode == PlacementMode::Pop ? "pop" : "cls";
}

std::vector<double> placement_weights(PlacementMode mode, const HopTable& hops,
                                      std::span<const std::uint64_t> populations) {
  std::vector<double> weights(hops.size(), 0.0);
  for (NodeId v = 0; v < hops.size(); ++v) {
    if (mode == PlacementMode::Pop) {
      weights[v] = static_cast<double>(populations[v]);
    } else {
      weights[v] = closeness(hops, v);
    }
  }
  return weights;
}

std::vector<NodeId> place_points(std::span<const double> weights, std::size_t k,
                                 std::uint64_t seed) {
  std::size_t positive = 0;
  for (double w : weights) {
    if (w < 0.0) throw Error("placement weights must be non-negative");
    if (w > 0.0) ++positive;
  }
  if (k > positive) {
    throw Error("cannot place " + std::to_string(k) + " points: only " +
                std::to_string(positive) + " nodes have positive weight");
  }

  Rng rng(seed);
  std::vector<bool> taken(weights.size(), false);
  std::vector<NodeId> chosen;
  chosen.reserve(k);
  while (chosen.size() < k) {
    double total = 0.0;
    for (NodeId v = 0; v < weights.size(); ++v) {
      if (!taken[v]) total += weights[v];
    }
    const double target = uniform01(rng) * total;
    double acc = 0.0;
    NodeId pick = 0;
    bool found = false;
    NodeId last_positive = 0;
    for (NodeId v = 0; v < weights.size(); ++v) {
      if (taken[v] || weights[v] <= 0.0) continue;
      last_positive = v;
      acc += weights[v];
      if (target < acc) {
        pick = v;
        found = true;
        break;
      }
    }
    // Rounding can leave target == acc at the end of the scan.
    if (!found) pick = last_positive;
    taken[pick] = true;
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<NodeId> place_points(const HopTable& hops,
                                 std::span<const std::uint64_t> populations,
                                 PlacementMode mode, std::size_t k,
                                 std::uint64_t seed) {
  auto weights = placement_weights(mode, hops, populations);
  return place_points(weights, k, seed);
}

Placement place_all(const HopTable& hops,
                    std::span<const std::uint64_t> populations,
                    const PlacementConfig& config, std::uint64_t seed) {
  auto weights = placement_weights(config.mode, hops, populations);
  Placement placement;
  placement.seed = seed;
  placement.fog = place_points(weights, config.fog_k, seed ^ kFogSalt);
  placement.cloud = place_points(weights, config.cloud_k, seed ^ kCloudSalt);
  placement.ldns = place_points(weights, config.ldns_k, seed ^ kLdnsSalt);
  return placement;
}

}  // namespace fogsim
