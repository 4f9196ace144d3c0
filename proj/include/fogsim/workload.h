#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

#include "fogsim/common.h"
#include "fogsim/topology.h"

namespace fogsim {

struct PopulationCell {
  double lat = 0.0;
  double lon = 0.0;
  std::uint64_t count = 0;
};

struct PopulationGrid {
  std::vector<PopulationCell> cells;
};

// Reads `lat,lon,count` records. Blank lines and lines starting with '#'
// are skipped. Throws when no cell has a positive count.
PopulationGrid load_population(std::istream& in);
PopulationGrid load_population_file(const std::filesystem::path& path);

// Haversine distance on a spherical Earth, kilometres.
double great_circle_km(double lat1, double lon1, double lat2, double lon2);

// Voronoi assignment: each cell's count goes to the geodesically nearest
// node, ties to the lowest node id. Result is indexed by node id.
std::vector<std::uint64_t> assign_population(const NetworkGraph& graph,
                                             const PopulationGrid& grid);

struct CatalogueItem {
  double probability = 0.0;
  double bitrate = 0.0;  // bits/s
};

// Zipf-ranked service catalogue. items()[i] describes ItemId i + 1.
class ServiceCatalogue {
 public:
  ServiceCatalogue(std::vector<CatalogueItem> items, double alpha);

  std::size_t size() const { return items_.size(); }
  double alpha() const { return alpha_; }
  const std::vector<CatalogueItem>& items() const { return items_; }
  const CatalogueItem& item(ItemId id) const { return items_.at(id - 1); }

  // Sum of probability * bitrate.
  double mean_bitrate() const;

  // Inverse-CDF draw of one item id.
  ItemId sample(Rng& rng) const;

 private:
  std::vector<CatalogueItem> items_;
  std::vector<double> cdf_;
  double alpha_;
};

// p(i) = i^-alpha / H(n, alpha); each item's bitrate is drawn uniformly from
// bitrate_set with a generator seeded by `seed`.
ServiceCatalogue build_catalogue(std::size_t n, double alpha,
                                 std::span<const double> bitrate_set,
                                 std::uint64_t seed);

struct DemandEntry {
  NodeId node;
  ItemId item;
  std::uint32_t count;  // requests per epoch second
};

struct DemandMatrix {
  // Sorted by (node, item); entries have count > 0.
  std::vector<DemandEntry> requests;
  double epoch = 1.0;            // seconds
  double offered_bitrate = 0.0;  // bits/s

  std::uint64_t total_requests() const;
};

// Scales the active-user budget U = target_bitrate / E[bitrate] over nodes in
// proportion to load_fraction * population, rounding per node; every user
// requests one item drawn from the catalogue distribution.
DemandMatrix draw_demand(std::span<const std::uint64_t> populations,
                         const ServiceCatalogue& catalogue,
                         double load_fraction, double target_bitrate,
                         std::uint64_t seed);

}  // namespace fogsim
