#include "fogsim/dnsbaseline.h"

#include "fogsim/pcf.h"

namespace fogsim {

DnsConfig make_dns_config(const Placement& placement, std::size_t catalogue_size,
                          double fog_cache_fraction, const ServiceNaming& naming) {
  DnsConfig config;
  config.ldns = placement.ldns;
  config.directory = build_profiles(placement, catalogue_size, fog_cache_fraction, naming);
  return config;
}

NodeId ldns_of(NodeId client, std::span<const NodeId> ldns_set, const HopTable& hops) {
  if (ldns_set.empty()) throw Error("DNS baseline needs at least one LDNS");
  return nearest(ldns_set, hops, client);
}

NodeId dns_select(NodeId ldns, std::span<const NodeId> service_points, const HopTable& hops) {
  if (service_points.empty()) throw Error("DNS baseline needs at least one service point");
  return nearest(service_points, hops, ldns);
}

DeliveryPlan resolve_request_dns(NodeId client, ItemId item, double bitrate,
                                 const DnsConfig& config, const HopTable& hops) {
  const auto& clouds = config.directory.cloud_points();
  if (clouds.empty()) throw Error("no cloud service point is configured");

  const NodeId resolver = ldns_of(client, config.ldns, hops);
  const NodeId point = dns_select(resolver, config.directory.service_points(), hops);

  DeliveryPlan plan;
  plan.legs.push_back({client, point, extract_path(hops, point, client), bitrate});
  plan.client_path_hops = hops.dist(client, point);
  if (!config.directory.at(point)->caches(item)) {
    const NodeId parent = nearest(clouds, hops, point);
    plan.legs.push_back({point, parent, extract_path(hops, parent, point), bitrate});
  }
  return plan;
}

}  // namespace fogsim
