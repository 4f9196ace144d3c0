#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/fabric.h"
#include "fogsim/placement.h"
#include "fogsim/topology.h"
#include "fogsim/workload.h"

namespace fogsim {

enum class Architecture { Icn, Dns };

Architecture parse_architecture(std::string_view text);
std::string_view to_string(Architecture arch);

struct ScenarioConfig {
  Architecture arch = Architecture::Icn;
  std::size_t fog_k = 2;
  std::size_t cloud_k = 2;
  std::size_t ldns_k = 0;
  PlacementMode mode = PlacementMode::Pop;
  std::vector<double> catchment{0.1, 1.0, 10.0};  // seconds

  std::size_t items = 1000;
  double alpha = 0.8;
  std::vector<double> bitrates{20e6, 40e6, 60e6};  // bits/s
  double fog_cache_fraction = 0.1;
  std::size_t bundle_size = 100;

  double load_fraction = 0.4;
  double target_bitrate = 70e9;  // bits/s

  std::size_t trials = 50;
  std::uint64_t base_seed = 1;

  bool count_fallback = true;
  SchemeKind scheme = SchemeKind::Exact;
  std::size_t bloom_m = 256;
  std::size_t bloom_k = 4;

  // Throws Error describing the first violated constraint.
  void validate() const;
};

// Shared, immutable inputs of every trial.
struct Scenario {
  NetworkGraph graph;
  HopTable hops;
  std::vector<std::uint64_t> populations;

  Scenario(NetworkGraph g, std::span<const std::uint64_t> pops);
  static Scenario load(const std::filesystem::path& topology,
                       const std::filesystem::path& population);
};

struct TrialMetrics {
  std::vector<double> arc_load;  // bits/s per arc id
  std::vector<int> path_samples;  // client-leg hop count, one per request
  double offered_bitrate = 0.0;
};

struct CatchmentLoad {
  double interval = 0.0;
  std::vector<double> arc_load;
};

struct TrialResult {
  std::uint64_t seed = 0;
  TrialMetrics unicast;
  std::vector<CatchmentLoad> multicast;  // one per configured interval (icn only)
};

// Fixed mixing of the base seed with the trial index. Independent of the
// configuration, so every configuration sees the same per-trial streams.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index);

inline constexpr std::uint64_t kCatalogueSalt = 0xca7a1061eULL;
inline constexpr std::uint64_t kDemandSalt = 0xde3a4dULL;

// Load accounting for fixed inputs. Requests are resolved in demand order
// (node, item), so path_samples line up across architectures.
TrialResult evaluate_demand(const Scenario& scenario, const ScenarioConfig& config,
                            const Placement& placement, const ServiceCatalogue& catalogue,
                            const DemandMatrix& demand);

// Full pipeline for one seeded trial: placement, catalogue, demand, request
// resolution and load accounting.
TrialResult run_trial(const Scenario& scenario, const ScenarioConfig& config,
                      std::size_t trial_index);

double backhaul(std::span<const double> arc_load);
inline double backhaul(const TrialMetrics& m) { return backhaul(m.arc_load); }

struct EcdfPoint {
  int hops;
  double fraction;

  bool operator==(const EcdfPoint&) const = default;
};

std::vector<EcdfPoint> ecdf(std::span<const int> samples);
std::vector<EcdfPoint> ecdf(const std::map<int, std::uint64_t>& histogram);

struct BackhaulSeries {
  std::optional<double> interval;  // nullopt: unicast
  std::vector<double> per_trial;   // bits/s
  double mean = 0.0;
  double stddev = 0.0;             // sample standard deviation
};

struct SweepResult {
  ScenarioConfig config;
  std::vector<BackhaulSeries> backhaul;  // unicast first, then configured intervals
  std::map<int, std::uint64_t> path_histogram;
  std::vector<EcdfPoint> path_ecdf;      // pooled over all trials
  std::vector<std::uint64_t> seeds;
  double mean_offered = 0.0;
};

// Runs every configuration's trials, `jobs` worker threads (0 = hardware
// concurrency). Aggregation happens in a fixed order, so results do not
// depend on `jobs`.
std::vector<SweepResult> run_sweep(const Scenario& scenario,
                                   std::span<const ScenarioConfig> configs,
                                   std::size_t jobs = 1);

}  // namespace fogsim
