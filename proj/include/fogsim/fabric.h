#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/pcf.h"
#include "fogsim/topology.h"

namespace fogsim {

enum class SchemeKind { Exact, Bloom };

SchemeKind parse_scheme(std::string_view text);
std::string_view to_string(SchemeKind kind);

// How arcs are labelled inside a forwarding identifier.
//  - Exact: one bit per arc, bit index == arc id.
//  - Bloom: each arc sets k positions of an m-bit filter, derived by seeded
//    double hashing of the arc id.
class ForwardingScheme {
 public:
  static ForwardingScheme exact(std::size_t width);
  static ForwardingScheme bloom(std::size_t m, std::size_t k,
                                std::uint64_t hash_seed = kDefaultHashSeed);

  static constexpr std::uint64_t kDefaultHashSeed = 0x4c495053494eULL;

  SchemeKind kind() const { return kind_; }
  std::size_t width() const { return width_; }
  std::size_t hashes() const { return hashes_; }
  std::uint64_t hash_seed() const { return hash_seed_; }

  // Bit positions that represent arc a.
  std::vector<std::size_t> label(ArcId a) const;

  bool operator==(const ForwardingScheme&) const = default;

 private:
  ForwardingScheme(SchemeKind kind, std::size_t width, std::size_t hashes,
                   std::uint64_t seed)
      : kind_(kind), width_(width), hashes_(hashes), hash_seed_(seed) {}

  SchemeKind kind_;
  std::size_t width_;
  std::size_t hashes_;
  std::uint64_t hash_seed_;
};

// Fixed-width forwarding identifier (FID).
class ForwardingId {
 public:
  explicit ForwardingId(ForwardingScheme scheme);

  const ForwardingScheme& scheme() const { return scheme_; }
  std::size_t width() const { return scheme_.width(); }

  void set(std::size_t bit);
  bool test(std::size_t bit) const;
  std::size_t popcount() const;

  void insert(ArcId a);
  // All label bits of a are set. Never false for an inserted arc.
  bool contains(ArcId a) const;

  // Sets every bit; used to probe forwarding loops.
  void fill();

 private:
  ForwardingScheme scheme_;
  std::vector<std::uint64_t> words_;
};

ForwardingId encode_arcs(std::span<const ArcId> arcs, const ForwardingScheme& scheme);
ForwardingId encode_tree(const MulticastTree& tree, const ForwardingScheme& scheme);

// Out-arcs of `node` whose label tests positive in the FID. Stateless.
std::vector<ArcId> forward(const ForwardingId& fid, NodeId node,
                           const NetworkGraph& graph);

// Arcs traversed when a packet carrying `fid` is injected at root and every
// node applies forward(). Each arc is traversed at most once, so the walk
// terminates for any FID. Arcs appear in traversal (breadth-first) order.
std::vector<ArcId> deliver_arcs(const ForwardingId& fid, NodeId root,
                                const NetworkGraph& graph);

// Nodes reached by the same walk, root included, ascending.
std::vector<NodeId> deliver(const ForwardingId& fid, NodeId root,
                            const NetworkGraph& graph);

// Standard Bloom false-positive estimate (1 - e^(-k n / m))^k.
double fpr_theoretical(std::size_t m, std::size_t k, std::size_t n_inserted);

}  // namespace fogsim
