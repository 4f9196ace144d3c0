#include "fogsim/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "fogsim/dnsbaseline.h"
#include "fogsim/srouter.h"

namespace fogsim {

Architecture parse_architecture(std::string_view text) {
  if (text == "icn") return Architecture::Icn;
  if (text == "dns") return Architecture::Dns;
  throw Error("unknown architecture '" + std::string(text) + "' (expected icn|dns)");
}

std::string_view to_string(Architecture arch) {
  return arch == Architecture::Icn ? "icn" : "dns";
}

void ScenarioConfig::validate() const {
  if (trials < 1) throw Error("trials must be >= 1");
  if (cloud_k < 1) throw Error("at least one cloud point is required");
  if (arch == Architecture::Icn && ldns_k != 0) {
    throw Error("icn runs take no LDNS points (ldns must be 0)");
  }
  if (arch == Architecture::Dns) {
    if (ldns_k < 1) throw Error("dns runs need at least one LDNS point");
    if (!catchment.empty()) throw Error("dns runs are unicast only; catchment list must be empty");
  }
  for (double t : catchment) {
    if (!(t >= 0.0)) throw Error("catchment intervals must be non-negative");
  }
  if (items < 1) throw Error("catalogue needs at least one item");
  if (alpha < 0.0) throw Error("Zipf exponent must be non-negative");
  if (bitrates.empty()) throw Error("bitrate set is empty");
  for (double b : bitrates) {
    if (!(b > 0.0)) throw Error("bitrates must be positive");
  }
  if (fog_cache_fraction < 0.0 || fog_cache_fraction >= 1.0) {
    throw Error("fog cache fraction must lie in [0, 1)");
  }
  if (bundle_size < 1) throw Error("bundle size must be positive");
  if (load_fraction < 0.0 || load_fraction > 1.0) throw Error("load fraction must lie in [0, 1]");
  if (!(target_bitrate > 0.0)) throw Error("target bitrate must be positive");
  if (scheme == SchemeKind::Bloom && (bloom_m < 1 || bloom_k < 1)) {
    throw Error("Bloom scheme needs m >= 1 and k >= 1");
  }
}

Scenario::Scenario(NetworkGraph g, std::span<const std::uint64_t> pops)
    : graph(std::move(g)), hops(graph), populations(pops.begin(), pops.end()) {
  if (populations.size() != graph.node_count()) {
    throw Error("population vector does not match the topology size");
  }
}

Scenario Scenario::load(const std::filesystem::path& topology,
                        const std::filesystem::path& population) {
  NetworkGraph graph = load_topology_file(topology);
  auto pops = assign_population(graph, load_population_file(population));
  return Scenario(std::move(graph), pops);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(trial_index));
}

namespace {

// Adds `rate * bitrate` for each listed arc. Under the Bloom scheme the
// packet follows the FID instead of the arc list, and arcs reached only by
// false positives carry whatever rate enters their tail node.
class LoadAccumulator {
 public:
  LoadAccumulator(const NetworkGraph& graph, const ScenarioConfig& config)
      : graph_(graph) {
    if (config.scheme == SchemeKind::Bloom) {
      bloom_.emplace(ForwardingScheme::bloom(config.bloom_m, config.bloom_k));
    }
  }

  void add(std::vector<double>& load, NodeId root, double root_rate,
           std::span<const std::pair<ArcId, double>> arc_rates, double bitrate) {
    if (!bloom_) {
      for (auto [arc, rate] : arc_rates) load[arc] += rate * bitrate;
      return;
    }
    ForwardingId fid(*bloom_);
    for (auto [arc, rate] : arc_rates) fid.insert(arc);
    std::map<ArcId, double> intended(arc_rates.begin(), arc_rates.end());
    std::map<NodeId, double> at_node{{root, root_rate}};
    for (ArcId a : deliver_arcs(fid, root, graph_)) {
      auto it = intended.find(a);
      double rate = it != intended.end() ? it->second : at_node[graph_.arc(a).src];
      load[a] += rate * bitrate;
      at_node.emplace(graph_.arc(a).dst, rate);
    }
  }

  void add_path(std::vector<double>& load, const Leg& leg, double rate) {
    scratch_.clear();
    for (ArcId a : leg.response_arcs) scratch_.emplace_back(a, rate);
    add(load, leg.server, rate, scratch_, leg.bitrate);
  }

 private:
  const NetworkGraph& graph_;
  std::optional<ForwardingScheme> bloom_;
  std::vector<std::pair<ArcId, double>> scratch_;
};

// Requests for one item that were matched to one service point.
struct ServiceGroup {
  std::vector<LeafRate> leaves;  // clients away from the service point
  double total_rate = 0.0;       // all clients, including local ones
  double bitrate = 0.0;
  std::optional<Leg> fallback;
};

}  // namespace

TrialResult evaluate_demand(const Scenario& scenario, const ScenarioConfig& config,
                            const Placement& placement, const ServiceCatalogue& catalogue,
                            const DemandMatrix& demand) {
  const auto& graph = scenario.graph;
  const auto& hops = scenario.hops;
  TrialResult result;
  result.seed = placement.seed;
  result.unicast.arc_load.assign(graph.arc_count(), 0.0);
  result.unicast.offered_bitrate = demand.offered_bitrate;
  result.unicast.path_samples.reserve(demand.total_requests());

  ServiceNaming naming;
  naming.bundle_size = config.bundle_size;

  std::optional<ServiceState> icn;
  std::optional<DnsConfig> dns;
  if (config.arch == Architecture::Icn) {
    icn.emplace(make_service_state(placement, catalogue.size(), config.fog_cache_fraction, naming));
  } else {
    dns.emplace(make_dns_config(placement, catalogue.size(), config.fog_cache_fraction, naming));
  }

  LoadAccumulator acc(graph, config);
  std::map<std::pair<NodeId, ItemId>, ServiceGroup> groups;

  for (const DemandEntry& entry : demand.requests) {
    const double bitrate = catalogue.item(entry.item).bitrate;
    DeliveryPlan plan = icn ? resolve_request(entry.node, entry.item, bitrate, *icn, hops)
                            : resolve_request_dns(entry.node, entry.item, bitrate, *dns, hops);
    const double rate = static_cast<double>(entry.count);
    acc.add_path(result.unicast.arc_load, plan.legs[0], rate);
    if (config.count_fallback) {
      for (std::size_t i = 1; i < plan.legs.size(); ++i) {
        acc.add_path(result.unicast.arc_load, plan.legs[i], rate);
      }
    }
    result.unicast.path_samples.insert(result.unicast.path_samples.end(), entry.count,
                                       plan.client_path_hops);

    if (icn && !config.catchment.empty()) {
      auto& group = groups[{plan.legs[0].server, entry.item}];
      group.bitrate = bitrate;
      group.total_rate += rate;
      if (entry.node != plan.legs[0].server) group.leaves.push_back({entry.node, rate});
      if (plan.has_fallback()) group.fallback = plan.legs[1];
    }
  }

  if (!icn) return result;

  // Downstream rates do not depend on the interval.
  std::vector<std::tuple<NodeId, const ServiceGroup*, std::vector<std::pair<ArcId, double>>>> trees;
  trees.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    trees.emplace_back(key.first, &group, downstream_rates(hops, key.first, group.leaves));
  }

  std::vector<std::pair<ArcId, double>> rates;
  for (double interval : config.catchment) {
    CatchmentLoad cl{interval, std::vector<double>(graph.arc_count(), 0.0)};
    for (const auto& [root, group, downstream] : trees) {
      const double windows = group_rate(group->total_rate, interval);
      rates.assign(downstream.begin(), downstream.end());
      for (auto& [arc, r] : rates) r = catchment_arc_rate(r, group->total_rate, interval);
      acc.add(cl.arc_load, root, windows, rates, group->bitrate);
      // The service point pulls a missing item once per window.
      if (config.count_fallback && group->fallback) {
        acc.add_path(cl.arc_load, *group->fallback, windows);
      }
    }
    result.multicast.push_back(std::move(cl));
  }
  return result;
}

TrialResult run_trial(const Scenario& scenario, const ScenarioConfig& config,
                      std::size_t trial_index) {
  config.validate();
  const std::uint64_t seed = trial_seed(config.base_seed, trial_index);
  PlacementConfig pc{config.mode, config.fog_k, config.cloud_k,
                     config.arch == Architecture::Dns ? config.ldns_k : 0};
  Placement placement = place_all(scenario.hops, scenario.populations, pc, seed);
  ServiceCatalogue catalogue =
      build_catalogue(config.items, config.alpha, config.bitrates, mix_seed(seed, kCatalogueSalt));
  DemandMatrix demand = draw_demand(scenario.populations, catalogue, config.load_fraction,
                                    config.target_bitrate, mix_seed(seed, kDemandSalt));
  return evaluate_demand(scenario, config, placement, catalogue, demand);
}

double backhaul(std::span<const double> arc_load) {
  double total = 0.0;
  for (double l : arc_load) total += l;
  return total;
}

std::vector<EcdfPoint> ecdf(const std::map<int, std::uint64_t>& histogram) {
  std::uint64_t total = 0;
  for (const auto& [h, n] : histogram) total += n;
  if (total == 0) throw Error("ECDF of an empty sample");
  std::vector<EcdfPoint> points;
  std::uint64_t running = 0;
  for (const auto& [h, n] : histogram) {
    if (n == 0) continue;
    running += n;
    points.push_back({h, static_cast<double>(running) / static_cast<double>(total)});
  }
  points.back().fraction = 1.0;
  return points;
}

std::vector<EcdfPoint> ecdf(std::span<const int> samples) {
  std::map<int, std::uint64_t> histogram;
  for (int s : samples) ++histogram[s];
  return ecdf(histogram);
}

namespace {

struct TrialSummary {
  std::uint64_t seed = 0;
  std::vector<double> backhaul;  // unicast, then intervals
  std::map<int, std::uint64_t> histogram;
  double offered = 0.0;
};

TrialSummary summarize_trial(const Scenario& scenario, const ScenarioConfig& config,
                             std::size_t trial) {
  TrialResult r = run_trial(scenario, config, trial);
  TrialSummary s;
  s.seed = r.seed;
  s.offered = r.unicast.offered_bitrate;
  s.backhaul.push_back(backhaul(r.unicast));
  for (const auto& m : r.multicast) s.backhaul.push_back(backhaul(m.arc_load));
  for (int h : r.unicast.path_samples) ++s.histogram[h];
  return s;
}

}  // namespace

std::vector<SweepResult> run_sweep(const Scenario& scenario,
                                   std::span<const ScenarioConfig> configs,
                                   std::size_t jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> work;  // (config, trial)
  for (std::size_t c = 0; c < configs.size(); ++c) {
    configs[c].validate();
    for (std::size_t t = 0; t < configs[c].trials; ++t) work.emplace_back(c, t);
  }

  std::vector<TrialSummary> summaries(work.size());
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(work.size(), 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < work.size(); i = next.fetch_add(1)) {
      try {
        summaries[i] = summarize_trial(scenario, configs[work[i].first], work[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = work.size();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepResult> results;
  results.reserve(configs.size());
  std::size_t cursor = 0;
  for (const auto& config : configs) {
    SweepResult res;
    res.config = config;
    const std::size_t series = 1 + (config.arch == Architecture::Icn ? config.catchment.size() : 0);
    res.backhaul.resize(series);
    for (std::size_t k = 1; k < series; ++k) res.backhaul[k].interval = config.catchment[k - 1];
    for (std::size_t t = 0; t < config.trials; ++t, ++cursor) {
      const TrialSummary& s = summaries[cursor];
      res.seeds.push_back(s.seed);
      res.mean_offered += s.offered;
      for (std::size_t k = 0; k < series; ++k) res.backhaul[k].per_trial.push_back(s.backhaul[k]);
      for (const auto& [h, n] : s.histogram) res.path_histogram[h] += n;
    }
    res.mean_offered /= static_cast<double>(config.trials);
    for (auto& b : res.backhaul) {
      double sum = 0.0;
      for (double v : b.per_trial) sum += v;
      b.mean = sum / static_cast<double>(b.per_trial.size());
      double sq = 0.0;
      for (double v : b.per_trial) sq += (v - b.mean) * (v - b.mean);
      b.stddev = b.per_trial.size() > 1 ? std::sqrt(sq / static_cast<double>(b.per_trial.size() - 1)) : 0.0;
    }
    res.path_ecdf = ecdf(res.path_histogram);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace fogsim
