#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/topology.h"

namespace fogsim::testing_util {

inline std::string data_path(const std::string& name) {
  return std::string(FOGSIM_DATA_DIR) + "/" + name;
}

inline std::vector<Node> plain_nodes(std::size_t n) {
  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i].label = "n" + std::to_string(i);
  return nodes;
}

// Random spanning tree plus `extra` random chords; always connected.
inline NetworkGraph random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                           std::size_t extra) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<NodeId>(rng() % v), v);
  }
  for (std::size_t i = 0; i < extra && n > 1; ++i) {
    auto u = static_cast<NodeId>(rng() % n);
    auto v = static_cast<NodeId>(rng() % n);
    if (u != v) edges.emplace_back(u, v);
  }
  return NetworkGraph(plain_nodes(n), edges);
}

inline NetworkGraph chain(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return NetworkGraph(plain_nodes(n), edges);
}

inline std::set<std::pair<NodeId, NodeId>> neighbour_pairs(const NetworkGraph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Arc& a : g.arcs()) out.emplace(a.src, a.dst);
  return out;
}

// Textbook queue BFS over an explicit adjacency set.
inline std::vector<int> bfs_oracle(const NetworkGraph& g, NodeId src) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const Arc& a : g.arcs()) adj[a.src].push_back(a.dst);
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace fogsim::testing_util
