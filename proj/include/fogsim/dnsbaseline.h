#pragma once

#include <span>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/placement.h"
#include "fogsim/srouter.h"
#include "fogsim/topology.h"

namespace fogsim {

// DNS-redirection Fog baseline. The replica handed to a client is the one
// nearest to the client's local resolver, not to the client.
struct DnsConfig {
  std::vector<NodeId> ldns;
  ServiceDirectory directory;  // service points (fog and cloud) and caches
};

DnsConfig make_dns_config(const Placement& placement, std::size_t catalogue_size,
                          double fog_cache_fraction, const ServiceNaming& naming = {});

// Nearest LDNS to the client, ties to the lowest id.
NodeId ldns_of(NodeId client, std::span<const NodeId> ldns_set, const HopTable& hops);

// Service point nearest to the LDNS, ties to the lowest id.
NodeId dns_select(NodeId ldns, std::span<const NodeId> service_points, const HopTable& hops);

// Unicast plan: client -> dns_select(ldns_of(client)); a cache miss adds a
// parent pull from the selected point's nearest cloud point.
DeliveryPlan resolve_request_dns(NodeId client, ItemId item, double bitrate,
                                 const DnsConfig& config, const HopTable& hops);

}  // namespace fogsim
