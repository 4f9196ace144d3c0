#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/topology.h"

namespace fogsim {

// Pop favours populous nodes, Cls favours central (high-closeness) nodes.
enum class PlacementMode { Pop, Cls };

PlacementMode parse_placement_mode(std::string_view text);
std::string_view to_string(PlacementMode mode);

std::vector<double> placement_weights(PlacementMode mode,
                                      const HopTable& hops,
                                      std::span<const std::uint64_t> populations);

// Draws k distinct nodes one at a time, each with probability proportional
// to its weight among the nodes not yet drawn. Returned in ascending order.
// Throws when fewer than k nodes have positive weight.
std::vector<NodeId> place_points(std::span<const double> weights, std::size_t k,
                                 std::uint64_t seed);

std::vector<NodeId> place_points(const HopTable& hops,
                                 std::span<const std::uint64_t> populations,
                                 PlacementMode mode, std::size_t k,
                                 std::uint64_t seed);

struct PlacementConfig {
  PlacementMode mode = PlacementMode::Pop;
  std::size_t fog_k = 0;
  std::size_t cloud_k = 0;
  std::size_t ldns_k = 0;
};

struct Placement {
  std::vector<NodeId> fog;
  std::vector<NodeId> cloud;
  std::vector<NodeId> ldns;
  std::uint64_t seed = 0;
};

// Per-role sub-stream salts; a role's seed is `seed ^ salt`.
inline constexpr std::uint64_t kFogSalt = 0x466f67466f67466fULL;
inline constexpr std::uint64_t kCloudSalt = 0x436c6f7564436c6fULL;
inline constexpr std::uint64_t kLdnsSalt = 0x4c444e534c444e53ULL;

// Roles are drawn independently, so a node may host several roles.
Placement place_all(const HopTable& hops,
                    std::span<const std::uint64_t> populations,
                    const PlacementConfig& config, std::uint64_t seed);

}  // namespace fogsim
