#include "fogsim/fabric.h"

#include <bit>
#include <cmath>
#include <string>

namespace fogsim {

SchemeKind parse_scheme(std::string_view text) {
  if (text == "exact") return SchemeKind::Exact;
  if (text == "bloom") return SchemeKind::Bloom;
  throw Error("unknown forwarding scheme '" + std::string(text) + "' (expected exact|bloom)");
}

std::string_view to_string(SchemeKind kind) {
  return kind == SchemeKind::Exact ? "exact" : "bloom";
}

ForwardingScheme ForwardingScheme::exact(std::size_t width) {
  return ForwardingScheme(SchemeKind::Exact, width, 1, 0);
}

ForwardingScheme ForwardingScheme::bloom(std::size_t m, std::size_t k,
                                         std::uint64_t hash_seed) {
  if (m == 0 || k == 0) throw Error("Bloom scheme needs m >= 1 and k >= 1");
  return ForwardingScheme(SchemeKind::Bloom, m, k, hash_seed);
}

std::vector<std::size_t> ForwardingScheme::label(ArcId a) const {
  if (kind_ == SchemeKind::Exact) return {static_cast<std::size_t>(a)};
  // Double hashing: position_j = h1 + j * h2 (mod m), h2 odd.
  const std::uint64_t h1 = mix64(hash_seed_ ^ (static_cast<std::uint64_t>(a) + 1));
  const std::uint64_t h2 = mix64(h1) | 1U;
  std::vector<std::size_t> positions(hashes_);
  for (std::size_t j = 0; j < hashes_; ++j) {
    positions[j] = static_cast<std::size_t>((h1 + j * h2) % width_);
  }
  return positions;
}

ForwardingId::ForwardingId(ForwardingScheme scheme)
    : scheme_(scheme), words_((scheme.width() + 63) / 64, 0) {}

void ForwardingId::set(std::size_t bit) {
  if (bit >= width()) {
    throw Error("bit " + std::to_string(bit) + " outside FID width " + std::to_string(width()));
  }
  words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

bool ForwardingId::test(std::size_t bit) const {
  if (bit >= width()) return false;
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

std::size_t ForwardingId::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void ForwardingId::insert(ArcId a) {
  for (std::size_t bit : scheme_.label(a)) set(bit);
}

bool ForwardingId::contains(ArcId a) const {
  for (std::size_t bit : scheme_.label(a)) {
    if (!test(bit)) return false;
  }
  return true;
}

void ForwardingId::fill() {
  for (std::size_t bit = 0; bit < width(); ++bit) set(bit);
}

ForwardingId encode_arcs(std::span<const ArcId> arcs, const ForwardingScheme& scheme) {
  ForwardingId fid(scheme);
  for (ArcId a : arcs) fid.insert(a);
  return fid;
}

ForwardingId encode_tree(const MulticastTree& tree, const ForwardingScheme& scheme) {
  return encode_arcs(tree.arcs, scheme);
}

std::vector<ArcId> forward(const ForwardingId& fid, NodeId node,
                           const NetworkGraph& graph) {
  std::vector<ArcId> out;
  for (ArcId a : graph.out_arcs(node)) {
    if (fid.contains(a)) out.push_back(a);
  }
  return out;
}

std::vector<ArcId> deliver_arcs(const ForwardingId& fid, NodeId root,
                                const NetworkGraph& graph) {
  std::vector<bool> used(graph.arc_count(), false);
  std::vector<bool> visited(graph.node_count(), false);
  std::vector<NodeId> frontier{root};
  visited[root] = true;
  std::vector<ArcId> traversed;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    for (ArcId a : forward(fid, frontier[head], graph)) {
      if (used[a]) continue;
      used[a] = true;
      traversed.push_back(a);
      NodeId next = graph.arc(a).dst;
      // A node forwards once; later copies arriving over other arcs are
      // still carried but not re-forwarded.
      if (!visited[next]) {
        visited[next] = true;
        frontier.push_back(next);
      }
    }
  }
  return traversed;
}

std::vector<NodeId> deliver(const ForwardingId& fid, NodeId root,
                            const NetworkGraph& graph) {
  std::vector<bool> reached(graph.node_count(), false);
  reached[root] = true;
  for (ArcId a : deliver_arcs(fid, root, graph)) reached[graph.arc(a).dst] = true;
  std::vector<NodeId> out;
  for (NodeId v = 0; v < reached.size(); ++v) {
    if (reached[v]) out.push_back(v);
  }
  return out;
}

double fpr_theoretical(std::size_t m, std::size_t k, std::size_t n_inserted) {
  const double kd = static_cast<double>(k);
  return std::pow(1.0 - std::exp(-kd * static_cast<double>(n_inserted) / static_cast<double>(m)), kd);
}

}  // namespace fogsim
