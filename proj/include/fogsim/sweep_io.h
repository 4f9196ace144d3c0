#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fogsim/harness.h"

namespace fogsim {

// A parsed grid file: shared inputs plus the expanded configuration list.
struct SweepPlan {
  std::filesystem::path topology;
  std::filesystem::path population;
  std::vector<ScenarioConfig> configs;
  std::size_t jobs = 1;
};

// Grid files are JSON documents:
//   {
//     "topology": "geant2012.graphml", "population": "geant_population.csv",
//     "trials": 50, "seed": 1, "jobs": 0, "placement": ["pop", "cls"],
//     "catalogue": {"items": 1000, "alpha": 0.8, "bitrates_bps": [2e7, 4e7, 6e7],
//                   "fog_cache_fraction": 0.1, "bundle_size": 100},
//     "demand": {"load_fraction": 0.4, "target_bps": 7e10},
//     "flags": {"count_fallback": true, "scheme": "exact", "bloom_m": 256, "bloom_k": 4},
//     "icn": {"fog": [2, 4, 6, 8], "cloud": [2, 4, 6, 8], "catchment": [0.1, 1, 10]},
//     "dns": {"fog": [2, 4, 6, 8], "cloud": [2, 4, 6, 8], "ldns": [2, 4, 6, 8]}
//   }
// Every key is optional. Relative paths resolve against the grid file's
// directory. Unknown keys are rejected.
SweepPlan parse_sweep_plan(std::istream& in, const std::filesystem::path& base_dir = {});
SweepPlan load_sweep_plan(const std::filesystem::path& path);

// Full grid over the given placement modes: icn fog x cloud in {2,4,6,8}^2,
// then dns ldns x fog x cloud in {2,4,6,8}^3.
std::vector<ScenarioConfig> default_grid(const ScenarioConfig& base,
                                         std::span<const PlacementMode> modes);

// Shortest round-trip decimal form; identical on every run.
std::string format_number(double value);

// arch,fog_k,cloud_k,ldns_k,mode,T,trial,backhaul_bps (T = "unicast" for
// the unicast series).
void write_backhaul_csv(std::ostream& out, std::span<const SweepResult> results);
// arch,fog_k,cloud_k,ldns_k,mode,hops,cum_fraction (pooled ECDF).
void write_pathlen_csv(std::ostream& out, std::span<const SweepResult> results);
// arch,fog_k,cloud_k,ldns_k,mode,T,trials,mean_backhaul_bps,std_backhaul_bps,mean_offered_bps
void write_summary_csv(std::ostream& out, std::span<const SweepResult> results);
// Config echo, per-trial seeds and methodology notes, as JSON.
void write_manifest(std::ostream& out, std::span<const SweepResult> results,
                    const std::filesystem::path& topology,
                    const std::filesystem::path& population);

// Writes backhaul.csv, pathlen.csv, summary.csv and manifest.json into dir.
void write_outputs(const std::filesystem::path& dir, std::span<const SweepResult> results,
                   const std::filesystem::path& topology,
                   const std::filesystem::path& population);

struct BackhaulRow {
  std::string arch;
  std::size_t fog_k = 0, cloud_k = 0, ldns_k = 0;
  std::string mode;
  std::string interval;  // "unicast" or seconds
  std::size_t trial = 0;
  double backhaul_bps = 0.0;
};

struct PathLenRow {
  std::string arch;
  std::size_t fog_k = 0, cloud_k = 0, ldns_k = 0;
  std::string mode;
  int hops = 0;
  double cum_fraction = 0.0;
};

std::vector<BackhaulRow> read_backhaul_csv(std::istream& in);
std::vector<PathLenRow> read_pathlen_csv(std::istream& in);

// Per-(config, T) mean and sample std of backhaul.csv rows, written in the
// summary.csv layout without the offered column.
void summarize_backhaul(std::span<const BackhaulRow> rows, std::ostream& out);

// Gnuplot data blocks, one per configuration, separated by two blank lines.
void write_gnuplot_ecdf(std::span<const PathLenRow> rows, std::ostream& out);

}  // namespace fogsim
