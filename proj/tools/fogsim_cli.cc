#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fogsim/harness.h"
#include "fogsim/sweep_io.h"

namespace {

std::vector<double> parse_intervals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw fogsim::Error("bad catchment interval '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fogsim::Error("cannot open " + path);
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fog service placement and backhaul simulator"};
  app.require_subcommand(1);

  fogsim::ScenarioConfig cfg;
  std::string topology, population, arch = "icn", placement = "pop", catchment = "0.1,1,10";
  std::string scheme = "exact", out_dir, grid;
  std::size_t jobs = 1;
  bool no_fallback = false;

  auto* run = app.add_subcommand("run", "Run one configuration");
  run->add_option("--topology", topology, "GraphML topology")->required()->check(CLI::ExistingFile);
  run->add_option("--population", population, "Population grid CSV")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--arch", arch, "icn or dns")->check(CLI::IsMember({"icn", "dns"}));
  run->add_option("--fog", cfg.fog_k, "Fog service points");
  run->add_option("--cloud", cfg.cloud_k, "Cloud service points");
  run->add_option("--ldns", cfg.ldns_k, "Local DNS resolvers (dns only)");
  run->add_option("--placement", placement, "pop or cls")->check(CLI::IsMember({"pop", "cls"}));
  run->add_option("--catchment", catchment, "Comma-separated catchment intervals in seconds");
  run->add_option("--trials", cfg.trials, "Number of trials");
  run->add_option("--seed", cfg.base_seed, "Base seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--no-fallback-load", no_fallback, "Exclude fog-to-cloud legs from backhaul");
  run->add_option("--scheme", scheme, "exact or bloom")->check(CLI::IsMember({"exact", "bloom"}));
  run->add_option("--fog-cache", cfg.fog_cache_fraction, "Fraction of the catalogue cached at fog");
  run->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  auto* sweep = app.add_subcommand("sweep", "Run every configuration of a grid file");
  sweep->add_option("--grid", grid, "JSON grid file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  auto* sweep_jobs = sweep->add_option("--jobs", jobs, "Worker threads, overrides the grid file");

  std::string input;
  auto* ecdf_cmd = app.add_subcommand("ecdf", "Gnuplot-ready ECDF blocks from pathlen.csv");
  ecdf_cmd->add_option("pathlen", input, "pathlen.csv")->required()->check(CLI::ExistingFile);
  auto* summarize_cmd = app.add_subcommand("summarize", "Mean and std per configuration");
  summarize_cmd->add_option("backhaul", input, "backhaul.csv")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.arch = fogsim::parse_architecture(arch);
      cfg.mode = fogsim::parse_placement_mode(placement);
      cfg.scheme = fogsim::parse_scheme(scheme);
      cfg.count_fallback = !no_fallback;
      if (cfg.arch == fogsim::Architecture::Dns) {
        if (run->count("--catchment") > 0) throw fogsim::Error("--catchment applies to icn only");
        cfg.catchment.clear();
      } else {
        cfg.catchment = parse_intervals(catchment);
      }
      cfg.validate();
      const auto scenario = fogsim::Scenario::load(topology, population);
      const std::vector<fogsim::ScenarioConfig> configs{cfg};
      const auto results = fogsim::run_sweep(scenario, configs, jobs);
      fogsim::write_outputs(out_dir, results, topology, population);
      for (const auto& series : results.front().backhaul) {
        std::cout << (series.interval ? "T=" + fogsim::format_number(*series.interval) : "unicast")
                  << " mean_backhaul_bps=" << fogsim::format_number(series.mean)
                  << " std=" << fogsim::format_number(series.stddev) << '\n';
      }
    } else if (*sweep) {
      auto plan = fogsim::load_sweep_plan(grid);
      if (sweep_jobs->count() > 0) plan.jobs = jobs;
      const auto scenario = fogsim::Scenario::load(plan.topology, plan.population);
      const auto results = fogsim::run_sweep(scenario, plan.configs, plan.jobs);
      fogsim::write_outputs(out_dir, results, plan.topology, plan.population);
      std::cout << results.size() << " configurations written to " << out_dir << '\n';
    } else if (*ecdf_cmd) {
      auto in = open_input(input);
      const auto rows = fogsim::read_pathlen_csv(in);
      fogsim::write_gnuplot_ecdf(rows, std::cout);
    } else if (*summarize_cmd) {
      auto in = open_input(input);
      const auto rows = fogsim::read_backhaul_csv(in);
      fogsim::summarize_backhaul(rows, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "fogsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
