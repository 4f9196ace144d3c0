#include "fogsim/workload.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

namespace fogsim {

PopulationGrid load_population(std::istream& in) {
  PopulationGrid grid;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string lat, lon, count;
    if (!std::getline(fields, lat, ',') || !std::getline(fields, lon, ',') ||
        !std::getline(fields, count)) {
      throw Error("population line " + std::to_string(line_no) +
                  ": expected lat,lon,count");
    }
    try {
      PopulationCell cell;
      cell.lat = std::stod(lat);
      cell.lon = std::stod(lon);
      long long c = std::stoll(count);
      if (c < 0) throw Error("negative count");
      cell.count = static_cast<std::uint64_t>(c);
      grid.cells.push_back(cell);
    } catch (const std::exception& e) {
      throw Error("population line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  bool any_positive = std::any_of(grid.cells.begin(), grid.cells.end(),
                                  [](const PopulationCell& c) { return c.count > 0; });
  if (!any_positive) throw Error("population grid has no populated cell");
  return grid;
}

PopulationGrid load_population_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open population file " + path.string());
  return load_population(in);
}

double great_circle_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * kRad;
  const double dlon = (lon2 - lon1) * kRad;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * kRad) * std::cos(lat2 * kRad) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

std::vector<std::uint64_t> assign_population(const NetworkGraph& graph,
                                             const PopulationGrid& grid) {
  if (grid.cells.empty()) throw Error("population grid is empty");
  std::vector<std::uint64_t> population(graph.node_count(), 0);
  for (const auto& cell : grid.cells) {
    NodeId best = 0;
    double best_km = great_circle_km(cell.lat, cell.lon, graph.node(0).lat, graph.node(0).lon);
    for (NodeId v = 1; v < graph.node_count(); ++v) {
      double km = great_circle_km(cell.lat, cell.lon, graph.node(v).lat, graph.node(v).lon);
      if (km < best_km) {
        best_km = km;
        best = v;
      }
    }
    population[best] += cell.count;
  }
  return population;
}

ServiceCatalogue::ServiceCatalogue(std::vector<CatalogueItem> items, double alpha)
    : items_(std::move(items)), alpha_(alpha) {
  cdf_.reserve(items_.size());
  double acc = 0.0;
  for (const auto& it : items_) {
    acc += it.probability;
    cdf_.push_back(acc);
  }
  if (!cdf_.empty()) cdf_.back() = 1.0;
}

double ServiceCatalogue::mean_bitrate() const {
  double mean = 0.0;
  for (const auto& it : items_) mean += it.probability * it.bitrate;
  return mean;
}

ItemId ServiceCatalogue::sample(Rng& rng) const {
  const double u = uniform01(rng);
  auto pos = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (pos == cdf_.end()) --pos;
  return static_cast<ItemId>(pos - cdf_.begin()) + 1;
}

ServiceCatalogue build_catalogue(std::size_t n, double alpha,
                                 std::span<const double> bitrate_set,
                                 std::uint64_t seed) {
  if (n == 0) throw Error("catalogue needs at least one item");
  if (alpha < 0.0) throw Error("Zipf exponent must be non-negative");
  if (bitrate_set.empty()) throw Error("bitrate set is empty");

  std::vector<CatalogueItem> items(n);
  // Summed smallest-first for accuracy.
  double harmonic = 0.0;
  for (std::size_t j = n; j >= 1; --j) harmonic += std::pow(static_cast<double>(j), -alpha);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    items[i].probability = std::pow(static_cast<double>(i + 1), -alpha) / harmonic;
    items[i].bitrate = bitrate_set[rng() % bitrate_set.size()];
  }
  return ServiceCatalogue(std::move(items), alpha);
}

std::uint64_t DemandMatrix::total_requests() const {
  std::uint64_t total = 0;
  for (const auto& e : requests) total += e.count;
  return total;
}

DemandMatrix draw_demand(std::span<const std::uint64_t> populations,
                         const ServiceCatalogue& catalogue,
                         double load_fraction, double target_bitrate,
                         std::uint64_t seed) {
  if (load_fraction < 0.0 || load_fraction > 1.0) {
    throw Error("load fraction must lie in [0, 1]");
  }
  if (!(target_bitrate > 0.0)) throw Error("target bitrate must be positive");
  double total_population = 0.0;
  for (auto p : populations) total_population += static_cast<double>(p);
  if (total_population <= 0.0) throw Error("all node populations are zero");

  DemandMatrix demand;
  if (load_fraction == 0.0) return demand;

  const double users_budget = target_bitrate / catalogue.mean_bitrate();
  const double active_total = load_fraction * total_population;

  Rng rng(seed);
  std::map<ItemId, std::uint32_t> per_item;
  for (NodeId v = 0; v < populations.size(); ++v) {
    const double share = load_fraction * static_cast<double>(populations[v]) / active_total;
    const auto users = static_cast<std::uint64_t>(std::llround(users_budget * share));
    if (users == 0) continue;
    per_item.clear();
    for (std::uint64_t u = 0; u < users; ++u) ++per_item[catalogue.sample(rng)];
    for (auto [item, count] : per_item) {
      demand.requests.push_back({v, item, count});
      demand.offered_bitrate += count * catalogue.item(item).bitrate;
    }
  }
  return demand;
}

}  // namespace fogsim
