#pragma once

#include <compare>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/topology.h"

namespace fogsim {

// Two-scope namespace: FQDN-level service requests live under HTTP, and
// wildcard micro-service bundles exchanged between service points live
// under HTTP-Micro.
enum class RootScope { Http, HttpMicro };

std::string_view to_string(RootScope scope);

struct ScopedName {
  RootScope scope = RootScope::Http;
  std::string service;   // FQDN
  std::string resource;  // URL, wildcard pattern, or empty for the whole FQDN

  // Validates the pattern grammar (at most one '*', only in final position).
  static ScopedName make(RootScope scope, std::string service,
                         std::string resource = {});

  auto operator<=>(const ScopedName&) const = default;
};

// True iff url equals a '*'-free pattern, or starts with the text before a
// trailing '*'. Throws Error for a malformed pattern.
bool wildcard_match(std::string_view pattern, std::string_view url);

class NoSubscriberError : public Error {
 public:
  using Error::Error;
};

// Rendezvous (RV) state: which service routers subscribed to which names.
// Single writer while building, then read-only.
class RendezvousTable {
 public:
  // Idempotent.
  void subscribe(const ScopedName& name, NodeId sr);

  std::size_t size() const;  // number of (name, subscriber) pairs

  // Exact-name subscribers; empty when none.
  std::vector<NodeId> subscribers(const ScopedName& name) const;

  // HTTP-Micro subscribers of `service` whose pattern covers `url`.
  std::vector<NodeId> micro_subscribers(std::string_view service,
                                        std::string_view url) const;

  const std::map<ScopedName, std::set<NodeId>>& entries() const { return entries_; }

 private:
  std::map<ScopedName, std::set<NodeId>> entries_;
};

// Nearest subscriber to the publisher by hop count, ties to the lowest id.
// Throws NoSubscriberError on an empty candidate set.
NodeId nearest(std::span<const NodeId> candidates, const HopTable& hops,
               NodeId publisher);

// Resolves a publication to its matched subscriber. HTTP publications match
// the exact name; HTTP-Micro publications carry a concrete URL and match
// every subscribed wildcard that covers it.
NodeId match(const RendezvousTable& table, const HopTable& hops,
             const ScopedName& publication, NodeId publisher);

struct MulticastTree {
  NodeId root = 0;
  std::vector<NodeId> leaves;  // ascending
  std::vector<ArcId> arcs;     // ascending, each arc once

  // Root, leaves and intermediate nodes, ascending.
  std::vector<NodeId> nodes(const NetworkGraph& graph) const;
};

// Union of the deterministic shortest paths root -> leaf. A leaf equal to
// the root contributes no arcs. Throws on an empty leaf set.
MulticastTree build_tree(const HopTable& hops, NodeId root,
                         std::span<const NodeId> leaves);

}  // namespace fogsim
