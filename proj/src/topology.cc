#include "fogsim/topology.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace fogsim {

NetworkGraph::NetworkGraph(std::vector<Node> nodes,
                           std::vector<std::pair<NodeId, NodeId>> edges)
    : nodes_(std::move(nodes)), out_(nodes_.size()) {
  if (nodes_.empty()) throw Error("topology has no nodes");

  std::set<std::pair<NodeId, NodeId>> unique;
  for (auto [u, v] : edges) {
    if (u >= nodes_.size() || v >= nodes_.size()) {
      throw Error("edge endpoint out of range: " + std::to_string(u) + "-" +
                  std::to_string(v));
    }
    if (u == v) continue;
    unique.emplace(std::min(u, v), std::max(u, v));
  }

  // Arc 2i is u->v and 2i+1 is v->u, which makes reverse() a bit flip.
  arcs_.reserve(unique.size() * 2);
  for (auto [u, v] : unique) {
    arcs_.push_back({u, v});
    arcs_.push_back({v, u});
  }
  for (ArcId a = 0; a < arcs_.size(); ++a) out_[arcs_[a].src].push_back(a);
  for (auto& list : out_) {
    std::sort(list.begin(), list.end(), [this](ArcId x, ArcId y) {
      return arcs_[x].dst < arcs_[y].dst;
    });
  }

  std::vector<bool> seen(nodes_.size(), false);
  std::deque<NodeId> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (ArcId a : out_[u]) {
      NodeId w = arcs_[a].dst;
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != nodes_.size()) {
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      if (!seen[v]) {
        throw Error("topology is disconnected: node '" + nodes_[v].label +
                    "' is unreachable from node '" + nodes_[0].label + "'");
      }
    }
  }
}

std::optional<ArcId> NetworkGraph::find_arc(NodeId src, NodeId dst) const {
  for (ArcId a : out_arcs(src)) {
    if (arcs_[a].dst == dst) return a;
  }
  return std::nullopt;
}

namespace {

namespace pt = boost::property_tree;

std::optional<double> parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

NetworkGraph load_topology(std::istream& graphml) {
  pt::ptree doc;
  try {
    pt::read_xml(graphml, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(std::string("malformed GraphML: ") + e.what());
  }
  auto root = doc.get_child_optional("graphml");
  if (!root) throw Error("malformed GraphML: missing <graphml> root");

  // key id -> attribute name, node domain only
  std::map<std::string, std::string> node_keys;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    auto domain = child.get_optional<std::string>("<xmlattr>.for");
    auto id = child.get_optional<std::string>("<xmlattr>.id");
    auto name = child.get_optional<std::string>(pt::ptree::path_type("<xmlattr>/attr.name", '/'));
    if (!id || !name) throw Error("malformed GraphML: <key> without id or attr.name");
    if (!domain || *domain == "node" || *domain == "all") node_keys[*id] = *name;
  }

  auto graph = root->get_child_optional("graph");
  if (!graph) throw Error("malformed GraphML: missing <graph> element");

  std::vector<Node> nodes;
  std::map<std::string, NodeId> index;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      auto id = child.get_optional<std::string>("<xmlattr>.id");
      if (!id) throw Error("malformed GraphML: <node> without id");
      if (index.contains(*id)) throw Error("malformed GraphML: duplicate node id '" + *id + "'");
      Node node;
      node.label = *id;
      std::optional<double> lat, lon;
      for (const auto& [dtag, data] : child) {
        if (dtag != "data") continue;
        auto key = data.get_optional<std::string>("<xmlattr>.key");
        if (!key) continue;
        auto it = node_keys.find(*key);
        if (it == node_keys.end()) continue;
        const std::string text = data.get_value<std::string>();
        if (it->second == "Latitude") {
          lat = parse_double(text);
          if (!lat) throw Error("node '" + *id + "' has a non-numeric Latitude");
        } else if (it->second == "Longitude") {
          lon = parse_double(text);
          if (!lon) throw Error("node '" + *id + "' has a non-numeric Longitude");
        } else if (it->second == "label" && !text.empty()) {
          node.label = text;
        }
      }
      if (!lat || !lon) {
        throw Error("node '" + node.label + "' (id " + *id + ") is missing Latitude/Longitude");
      }
      node.lat = *lat;
      node.lon = *lon;
      index.emplace(*id, static_cast<NodeId>(nodes.size()));
      nodes.push_back(std::move(node));
    } else if (tag == "edge") {
      auto src = child.get_optional<std::string>("<xmlattr>.source");
      auto dst = child.get_optional<std::string>("<xmlattr>.target");
      if (!src || !dst) throw Error("malformed GraphML: <edge> without source/target");
      raw_edges.emplace_back(*src, *dst);
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [s, t] : raw_edges) {
    auto si = index.find(s);
    auto ti = index.find(t);
    if (si == index.end() || ti == index.end()) {
      throw Error("malformed GraphML: edge " + s + "-" + t + " references an unknown node");
    }
    edges.emplace_back(si->second, ti->second);
  }
  return NetworkGraph(std::move(nodes), std::move(edges));
}

NetworkGraph load_topology_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open topology file " + path.string());
  return load_topology(in);
}

HopTable::HopTable(const NetworkGraph& graph)
    : n_(graph.node_count()),
      dist_(n_ * n_, -1),
      pred_(n_ * n_, 0),
      pred_arc_(n_ * n_, 0) {
  std::vector<NodeId> queue;
  queue.reserve(n_);
  for (NodeId s = 0; s < n_; ++s) {
    int* dist = &dist_[s * n_];
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      for (ArcId a : graph.out_arcs(u)) {
        NodeId w = graph.arc(a).dst;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    // Out-arcs are sorted by neighbour id, so the first qualifying neighbour
    // is the lowest-id one.
    pred_[s * n_ + s] = s;
    for (NodeId v = 0; v < n_; ++v) {
      if (v == s) continue;
      for (ArcId a : graph.out_arcs(v)) {
        NodeId u = graph.arc(a).dst;
        if (dist[u] == dist[v] - 1) {
          pred_[s * n_ + v] = u;
          pred_arc_[s * n_ + v] = graph.reverse(a);
          break;
        }
      }
    }
  }
}

std::vector<ArcId> extract_path(const HopTable& hops, NodeId src, NodeId dst) {
  std::vector<ArcId> path(static_cast<std::size_t>(hops.dist(src, dst)));
  NodeId v = dst;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    *it = hops.pred_arc(src, v);
    v = hops.pred(src, v);
  }
  return path;
}

double closeness(const HopTable& hops, NodeId v) {
  if (hops.size() <= 1) return 1.0;
  long total = 0;
  for (NodeId u = 0; u < hops.size(); ++u) total += hops.dist(v, u);
  return static_cast<double>(hops.size() - 1) / static_cast<double>(total);
}

}  // namespace fogsim
