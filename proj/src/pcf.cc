#include "fogsim/pcf.h"

#include <algorithm>

namespace fogsim {

std::string_view to_string(RootScope scope) {
  return scope == RootScope::Http ? "HTTP" : "HTTP-Micro";
}

namespace {

void check_pattern(std::string_view pattern) {
  auto star = pattern.find('*');
  if (star != std::string_view::npos && star != pattern.size() - 1) {
    throw Error("malformed wildcard pattern '" + std::string(pattern) +
                "': '*' is only allowed as the final character");
  }
}

}  // namespace

ScopedName ScopedName::make(RootScope scope, std::string service,
                            std::string resource) {
  if (service.empty()) throw Error("scoped name needs a service FQDN");
  check_pattern(resource);
  return ScopedName{scope, std::move(service), std::move(resource)};
}

bool wildcard_match(std::string_view pattern, std::string_view url) {
  check_pattern(pattern);
  if (!pattern.empty() && pattern.back() == '*') {
    return url.starts_with(pattern.substr(0, pattern.size() - 1));
  }
  return url == pattern;
}

void RendezvousTable::subscribe(const ScopedName& name, NodeId sr) {
  check_pattern(name.resource);
  entries_[name].insert(sr);
}

std::size_t RendezvousTable::size() const {
  std::size_t n = 0;
  for (const auto& [name, subs] : entries_) n += subs.size();
  return n;
}

std::vector<NodeId> RendezvousTable::subscribers(const ScopedName& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<NodeId> RendezvousTable::micro_subscribers(std::string_view service,
                                                       std::string_view url) const {
  std::set<NodeId> found;
  ScopedName lower{RootScope::HttpMicro, std::string(service), {}};
  for (auto it = entries_.lower_bound(lower);
       it != entries_.end() && it->first.scope == RootScope::HttpMicro &&
       it->first.service == service;
       ++it) {
    if (wildcard_match(it->first.resource, url)) {
      found.insert(it->second.begin(), it->second.end());
    }
  }
  return {found.begin(), found.end()};
}

NodeId nearest(std::span<const NodeId> candidates, const HopTable& hops,
               NodeId publisher) {
  if (candidates.empty()) throw NoSubscriberError("no subscriber to match");
  NodeId best = candidates[0];
  int best_dist = hops.dist(publisher, best);
  for (NodeId c : candidates.subspan(1)) {
    int d = hops.dist(publisher, c);
    if (d < best_dist || (d == best_dist && c < best)) {
      best = c;
      best_dist = d;
    }
  }
  return best;
}

NodeId match(const RendezvousTable& table, const HopTable& hops,
             const ScopedName& publication, NodeId publisher) {
  std::vector<NodeId> candidates =
      publication.scope == RootScope::HttpMicro
          ? table.micro_subscribers(publication.service, publication.resource)
          : table.subscribers(publication);
  if (candidates.empty()) {
    throw NoSubscriberError("no subscriber for " + std::string(to_string(publication.scope)) +
                            "/" + publication.service + publication.resource);
  }
  return nearest(candidates, hops, publisher);
}

std::vector<NodeId> MulticastTree::nodes(const NetworkGraph& graph) const {
  std::vector<NodeId> out{root};
  for (ArcId a : arcs) {
    out.push_back(graph.arc(a).src);
    out.push_back(graph.arc(a).dst);
  }
  out.insert(out.end(), leaves.begin(), leaves.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MulticastTree build_tree(const HopTable& hops, NodeId root,
                         std::span<const NodeId> leaves) {
  if (leaves.empty()) throw Error("multicast tree needs at least one leaf");
  MulticastTree tree;
  tree.root = root;
  tree.leaves.assign(leaves.begin(), leaves.end());
  std::sort(tree.leaves.begin(), tree.leaves.end());
  tree.leaves.erase(std::unique(tree.leaves.begin(), tree.leaves.end()), tree.leaves.end());

  // Walk each leaf back towards the root until the walk meets a node that is
  // already on the tree; all predecessor walks share the root's tree.
  std::vector<bool> on_tree(hops.size(), false);
  on_tree[root] = true;
  for (NodeId leaf : tree.leaves) {
    NodeId v = leaf;
    while (!on_tree[v]) {
      on_tree[v] = true;
      tree.arcs.push_back(hops.pred_arc(root, v));
      v = hops.pred(root, v);
    }
  }
  std::sort(tree.arcs.begin(), tree.arcs.end());
  return tree;
}

}  // namespace fogsim
