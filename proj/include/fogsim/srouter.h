#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/pcf.h"
#include "fogsim/placement.h"
#include "fogsim/topology.h"

namespace fogsim {

enum class ServiceRole { Fog, Cloud };

// A service router (fSR or cSR) and the content behind it. Caches are
// popularity-ordered prefixes of the catalogue: the node holds items
// 1..cached_top.
struct SRProfile {
  NodeId node = 0;
  ServiceRole role = ServiceRole::Fog;
  std::size_t cached_top = 0;
  std::string offered_fqdn;

  bool caches(ItemId item) const { return item >= 1 && item <= cached_top; }
};

// Resource naming inside one FQDN. Items are grouped into micro-service
// bundles of `bundle_size` consecutive ranks, each addressed by the wildcard
// "/bundle<b>/*".
struct ServiceNaming {
  std::string fqdn = "service.fog.example";
  std::size_t bundle_size = 100;

  std::size_t bundle_of(ItemId item) const { return (item - 1) / bundle_size; }
  std::string url(ItemId item) const;
  std::string bundle_pattern(std::size_t bundle) const;
};

class ServiceDirectory {
 public:
  ServiceDirectory() = default;
  explicit ServiceDirectory(std::vector<SRProfile> profiles);

  const std::vector<SRProfile>& profiles() const { return profiles_; }
  // nullptr when no service point sits at v.
  const SRProfile* at(NodeId v) const;
  const std::vector<NodeId>& service_points() const { return points_; }
  const std::vector<NodeId>& cloud_points() const { return clouds_; }

 private:
  std::vector<SRProfile> profiles_;  // ascending by node
  std::vector<NodeId> points_;
  std::vector<NodeId> clouds_;
};

// One profile per service-point node. A node drawn for both roles is a
// cloud point (its cache is a superset). Fog points cache the top
// floor(fog_cache_fraction * catalogue_size) items.
ServiceDirectory build_profiles(const Placement& placement, std::size_t catalogue_size,
                                double fog_cache_fraction, const ServiceNaming& naming);

// Every service point subscribes to the FQDN under HTTP; cloud points also
// subscribe to every bundle wildcard under HTTP-Micro.
RendezvousTable publish_offerings(const ServiceDirectory& directory,
                                  const ServiceNaming& naming,
                                  std::size_t catalogue_size);

struct ServiceState {
  ServiceNaming naming;
  ServiceDirectory directory;
  RendezvousTable rendezvous;
};

ServiceState make_service_state(const Placement& placement, std::size_t catalogue_size,
                                 double fog_cache_fraction, ServiceNaming naming = {});

// One request/response exchange: requester asks server, the response flows
// back over the reverse arcs of the request path.
struct Leg {
  NodeId requester = 0;
  NodeId server = 0;
  std::vector<ArcId> response_arcs;  // server -> requester
  double bitrate = 0.0;

  std::size_t hops() const { return response_arcs.size(); }
};

struct DeliveryPlan {
  std::vector<Leg> legs;  // legs[0] is the client's leg
  int client_path_hops = 0;

  bool has_fallback() const { return legs.size() > 1; }
};

enum class EventKind { Request, MicroRequest, MicroResponse, Response };

struct Event {
  EventKind kind;
  RootScope scope;
  NodeId from;
  NodeId to;
};

// Publication order of a plan: client request; then, for a cache miss,
// the HTTP-Micro request and its response; finally the response to the
// client.
std::vector<Event> event_sequence(const DeliveryPlan& plan);

// Matches the client's FQDN publication to the nearest service point; on a
// cache miss that point publishes the item URL under HTTP-Micro and is
// matched to the nearest covering cloud point.
DeliveryPlan resolve_request(NodeId client, ItemId item, double bitrate,
                             const ServiceState& state, const HopTable& hops);

struct Arrival {
  NodeId client;
  double time;  // seconds
};

struct CatchmentGroup {
  NodeId service_point = 0;
  ItemId item = 0;
  std::vector<NodeId> members;  // one entry per request, arrival order
  double window_start = 0.0;
  double interval = 0.0;

  std::size_t size() const { return members.size(); }
};

// Windowing over arrivals sorted by time: the first request opens
// [t, t + T], later requests with time <= t + T join, and the first one
// after that opens the next window.
std::vector<CatchmentGroup> catchment_group(std::span<const Arrival> arrivals, double interval,
                                            NodeId service_point = 0, ItemId item = 0);

// Window (group) rate for Poisson arrivals of rate `rate` under the
// windowing above: rate / (1 + rate * T).
double group_rate(double rate, double interval);

// Every tree arc carries groups_per_s * bitrate * chunk_duration bits/s.
std::vector<double> multicast_load(double groups_per_s, const MulticastTree& tree,
                                   double bitrate, std::size_t arc_count,
                                   double chunk_duration = 1.0);

struct LeafRate {
  NodeId node;
  double rate;  // requests/s
};

// Request rate flowing through each arc of the shortest-path tree from root
// to the leaves, ascending by arc id. Leaves equal to the root add nothing.
std::vector<std::pair<ArcId, double>> downstream_rates(const HopTable& hops, NodeId root,
                                                       std::span<const LeafRate> leaves);

// Expected transmissions/s on one tree arc when windows are opened by the
// whole request stream of `total_rate` (all members, including requests
// local to the root) and each window's response only travels the arcs that
// lead to members of that window. With W = group_rate(total_rate, T) and
// downstream rate r:  W * (1 - (1 - r / total_rate) * exp(-r * T)).
// Equals r at T = 0, never exceeds r, and is non-increasing in T.
double catchment_arc_rate(double downstream, double total_rate, double interval);

std::vector<std::pair<ArcId, double>> catchment_arc_rates(
    const HopTable& hops, NodeId root, std::span<const LeafRate> leaves,
    double total_rate, double interval);

}  // namespace fogsim
