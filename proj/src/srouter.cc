#include "fogsim/srouter.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace fogsim {

std::string ServiceNaming::url(ItemId item) const {
  return "/bundle" + std::to_string(bundle_of(item)) + "/item" + std::to_string(item);
}

std::string ServiceNaming::bundle_pattern(std::size_t bundle) const {
  return "/bundle" + std::to_string(bundle) + "/*";
}

ServiceDirectory::ServiceDirectory(std::vector<SRProfile> profiles)
    : profiles_(std::move(profiles)) {
  std::sort(profiles_.begin(), profiles_.end(),
            [](const SRProfile& a, const SRProfile& b) { return a.node < b.node; });
  for (std::size_t i = 1; i < profiles_.size(); ++i) {
    if (profiles_[i].node == profiles_[i - 1].node) {
      throw Error("two service profiles at node " + std::to_string(profiles_[i].node));
    }
  }
  for (const auto& p : profiles_) {
    points_.push_back(p.node);
    if (p.role == ServiceRole::Cloud) clouds_.push_back(p.node);
  }
}

const SRProfile* ServiceDirectory::at(NodeId v) const {
  auto it = std::lower_bound(profiles_.begin(), profiles_.end(), v,
                             [](const SRProfile& p, NodeId n) { return p.node < n; });
  if (it == profiles_.end() || it->node != v) return nullptr;
  return &*it;
}

ServiceDirectory build_profiles(const Placement& placement, std::size_t catalogue_size,
                                double fog_cache_fraction, const ServiceNaming& naming) {
  if (fog_cache_fraction < 0.0 || fog_cache_fraction >= 1.0) {
    throw Error("fog cache fraction must lie in [0, 1)");
  }
  const auto fog_top = static_cast<std::size_t>(
      std::floor(fog_cache_fraction * static_cast<double>(catalogue_size)));
  std::map<NodeId, SRProfile> by_node;
  for (NodeId v : placement.fog) {
    by_node[v] = SRProfile{v, ServiceRole::Fog, std::min(fog_top, catalogue_size - 1), naming.fqdn};
  }
  for (NodeId v : placement.cloud) {
    by_node[v] = SRProfile{v, ServiceRole::Cloud, catalogue_size, naming.fqdn};
  }
  std::vector<SRProfile> profiles;
  for (auto& [node, profile] : by_node) profiles.push_back(std::move(profile));
  return ServiceDirectory(std::move(profiles));
}

RendezvousTable publish_offerings(const ServiceDirectory& directory,
                                  const ServiceNaming& naming,
                                  std::size_t catalogue_size) {
  RendezvousTable table;
  const auto fqdn_name = ScopedName::make(RootScope::Http, naming.fqdn);
  const std::size_t bundles = catalogue_size == 0 ? 0 : (catalogue_size - 1) / naming.bundle_size + 1;
  for (const auto& p : directory.profiles()) {
    table.subscribe(fqdn_name, p.node);
    if (p.role != ServiceRole::Cloud) continue;
    for (std::size_t b = 0; b < bundles; ++b) {
      table.subscribe(ScopedName::make(RootScope::HttpMicro, naming.fqdn, naming.bundle_pattern(b)),
                      p.node);
    }
  }
  return table;
}

ServiceState make_service_state(const Placement& placement, std::size_t catalogue_size,
                                 double fog_cache_fraction, ServiceNaming naming) {
  if (naming.bundle_size == 0) throw Error("bundle size must be positive");
  ServiceState state;
  state.directory = build_profiles(placement, catalogue_size, fog_cache_fraction, naming);
  state.rendezvous = publish_offerings(state.directory, naming, catalogue_size);
  state.naming = std::move(naming);
  return state;
}

std::vector<Event> event_sequence(const DeliveryPlan& plan) {
  std::vector<Event> events;
  if (plan.legs.empty()) return events;
  const Leg& client = plan.legs.front();
  events.push_back({EventKind::Request, RootScope::Http, client.requester, client.server});
  for (std::size_t i = 1; i < plan.legs.size(); ++i) {
    const Leg& leg = plan.legs[i];
    events.push_back({EventKind::MicroRequest, RootScope::HttpMicro, leg.requester, leg.server});
    events.push_back({EventKind::MicroResponse, RootScope::Http, leg.server, leg.requester});
  }
  events.push_back({EventKind::Response, RootScope::Http, client.server, client.requester});
  return events;
}

DeliveryPlan resolve_request(NodeId client, ItemId item, double bitrate,
                             const ServiceState& state, const HopTable& hops) {
  if (state.directory.cloud_points().empty()) {
    throw Error("no cloud service point is configured");
  }
  DeliveryPlan plan;
  const NodeId point = match(state.rendezvous, hops,
                             ScopedName{RootScope::Http, state.naming.fqdn, {}}, client);
  plan.legs.push_back({client, point, extract_path(hops, point, client), bitrate});
  plan.client_path_hops = hops.dist(client, point);

  const SRProfile* profile = state.directory.at(point);
  if (profile == nullptr) throw Error("matched node has no service profile");
  if (!profile->caches(item)) {
    NodeId origin;
    try {
      origin = match(state.rendezvous, hops,
                     ScopedName{RootScope::HttpMicro, state.naming.fqdn, state.naming.url(item)},
                     point);
    } catch (const NoSubscriberError&) {
      throw Error("no cloud point covers item " + std::to_string(item));
    }
    plan.legs.push_back({point, origin, extract_path(hops, origin, point), bitrate});
  }
  return plan;
}

std::vector<CatchmentGroup> catchment_group(std::span<const Arrival> arrivals, double interval,
                                            NodeId service_point, ItemId item) {
  if (interval < 0.0) throw Error("catchment interval must be non-negative");
  std::vector<CatchmentGroup> groups;
  for (const Arrival& a : arrivals) {
    if (groups.empty() || a.time > groups.back().window_start + interval) {
      groups.push_back({service_point, item, {}, a.time, interval});
    }
    groups.back().members.push_back(a.client);
  }
  return groups;
}

double group_rate(double rate, double interval) {
  if (rate < 0.0) throw Error("request rate must be non-negative");
  return rate / (1.0 + rate * interval);
}

std::vector<double> multicast_load(double groups_per_s, const MulticastTree& tree,
                                   double bitrate, std::size_t arc_count,
                                   double chunk_duration) {
  std::vector<double> load(arc_count, 0.0);
  for (ArcId a : tree.arcs) load.at(a) = groups_per_s * bitrate * chunk_duration;
  return load;
}

std::vector<std::pair<ArcId, double>> downstream_rates(const HopTable& hops, NodeId root,
                                                       std::span<const LeafRate> leaves) {
  // Indexed by the head node of each tree arc.
  std::vector<double> through(hops.size(), 0.0);
  std::vector<bool> on_tree(hops.size(), false);
  for (const LeafRate& leaf : leaves) {
    for (NodeId v = leaf.node; v != root; v = hops.pred(root, v)) {
      through[v] += leaf.rate;
      on_tree[v] = true;
    }
  }
  std::vector<std::pair<ArcId, double>> rates;
  for (NodeId v = 0; v < hops.size(); ++v) {
    if (on_tree[v]) rates.emplace_back(hops.pred_arc(root, v), through[v]);
  }
  std::sort(rates.begin(), rates.end());
  return rates;
}

double catchment_arc_rate(double downstream, double total_rate, double interval) {
  if (total_rate <= 0.0 || downstream <= 0.0) return 0.0;
  const double r = std::min(downstream, total_rate);
  const double share = r / total_rate;
  // W * share == r / (1 + total_rate * T), exact at T = 0.
  return r / (1.0 + total_rate * interval) +
         group_rate(total_rate, interval) * (1.0 - share) * -std::expm1(-r * interval);
}

std::vector<std::pair<ArcId, double>> catchment_arc_rates(
    const HopTable& hops, NodeId root, std::span<const LeafRate> leaves,
    double total_rate, double interval) {
  auto rates = downstream_rates(hops, root, leaves);
  for (auto& [arc, rate] : rates) rate = catchment_arc_rate(rate, total_rate, interval);
  return rates;
}

}  // namespace fogsim
