#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/common.h"

namespace fogsim {

struct Node {
  std::string label;
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

struct Arc {
  NodeId src;
  NodeId dst;
};

// Directed-arc view of an undirected, connected, simple graph. Every
// undirected edge {u, v} becomes the arc pair u->v, v->u. Immutable after
// construction.
class NetworkGraph {
 public:
  // Duplicate undirected edges are collapsed and self-loops dropped. Throws
  // Error when an endpoint is out of range or the graph is disconnected.
  NetworkGraph(std::vector<Node> nodes,
               std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const Node& node(NodeId v) const { return nodes_.at(v); }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Out-arcs of v, ordered by ascending destination node id.
  std::span<const ArcId> out_arcs(NodeId v) const { return out_.at(v); }

  // The opposite-direction arc of a.
  ArcId reverse(ArcId a) const { return a ^ 1U; }

  std::optional<ArcId> find_arc(NodeId src, NodeId dst) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
};

// Parses a Topology Zoo GraphML document. Node ids are assigned densely in
// document order; coordinates come from the `Latitude` / `Longitude` keys.
NetworkGraph load_topology(std::istream& graphml);
NetworkGraph load_topology_file(const std::filesystem::path& path);

// All-pairs unit-weight shortest paths. For each source s, pred(s, v) is the
// lowest-id neighbour u of v with dist(s, u) == dist(s, v) - 1, so every
// source has exactly one deterministic shortest-path tree.
class HopTable {
 public:
  explicit HopTable(const NetworkGraph& graph);

  std::size_t size() const { return n_; }
  int dist(NodeId src, NodeId dst) const { return dist_[src * n_ + dst]; }
  NodeId pred(NodeId src, NodeId dst) const { return pred_[src * n_ + dst]; }
  // Arc pred(src, dst) -> dst; undefined when src == dst.
  ArcId pred_arc(NodeId src, NodeId dst) const { return pred_arc_[src * n_ + dst]; }

 private:
  std::size_t n_;
  std::vector<int> dist_;
  std::vector<NodeId> pred_;
  std::vector<ArcId> pred_arc_;
};

inline HopTable all_pairs(const NetworkGraph& graph) { return HopTable(graph); }

// Arcs of the deterministic shortest path src -> dst, in travel order.
std::vector<ArcId> extract_path(const HopTable& hops, NodeId src, NodeId dst);

// (|V| - 1) / sum of hop distances from v. A single-node graph yields 1.
double closeness(const HopTable& hops, NodeId v);

}  // namespace fogsim
