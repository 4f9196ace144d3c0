#include "fogsim/sweep_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace fogsim {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw Error(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.contains(key)) throw Error("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
std::vector<T> list_of(const json& obj, const char* key, std::vector<T> fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<std::vector<T>>();
}

}  // namespace

SweepPlan parse_sweep_plan(std::istream& in, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed grid file: ") + e.what());
  }
  try {
    reject_unknown(doc, {"topology", "population", "trials", "seed", "jobs", "placement",
                         "catalogue", "demand", "flags", "icn", "dns"},
                   "grid file");
    SweepPlan plan;
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_relative() ? base_dir / path : path;
    };
    plan.topology = resolve(doc.value("topology", std::string("geant2012.graphml")));
    plan.population = resolve(doc.value("population", std::string("geant_population.csv")));
    plan.jobs = doc.value("jobs", std::size_t{1});

    ScenarioConfig base;
    base.trials = doc.value("trials", base.trials);
    base.base_seed = doc.value("seed", base.base_seed);
    if (doc.contains("catalogue")) {
      const auto& c = doc.at("catalogue");
      reject_unknown(c, {"items", "alpha", "bitrates_bps", "fog_cache_fraction", "bundle_size"},
                     "catalogue");
      base.items = c.value("items", base.items);
      base.alpha = c.value("alpha", base.alpha);
      base.bitrates = list_of<double>(c, "bitrates_bps", base.bitrates);
      base.fog_cache_fraction = c.value("fog_cache_fraction", base.fog_cache_fraction);
      base.bundle_size = c.value("bundle_size", base.bundle_size);
    }
    if (doc.contains("demand")) {
      const auto& d = doc.at("demand");
      reject_unknown(d, {"load_fraction", "target_bps"}, "demand");
      base.load_fraction = d.value("load_fraction", base.load_fraction);
      base.target_bitrate = d.value("target_bps", base.target_bitrate);
    }
    if (doc.contains("flags")) {
      const auto& f = doc.at("flags");
      reject_unknown(f, {"count_fallback", "scheme", "bloom_m", "bloom_k"}, "flags");
      base.count_fallback = f.value("count_fallback", base.count_fallback);
      base.scheme = parse_scheme(f.value("scheme", std::string("exact")));
      base.bloom_m = f.value("bloom_m", base.bloom_m);
      base.bloom_k = f.value("bloom_k", base.bloom_k);
    }

    std::vector<PlacementMode> modes;
    for (const auto& m : list_of<std::string>(doc, "placement", {"pop"})) {
      modes.push_back(parse_placement_mode(m));
    }
    const std::vector<std::size_t> counts{2, 4, 6, 8};
    for (PlacementMode mode : modes) {
      if (doc.contains("icn")) {
        const auto& g = doc.at("icn");
        reject_unknown(g, {"fog", "cloud", "catchment"}, "icn");
        auto catchment = list_of<double>(g, "catchment", {0.1, 1.0, 10.0});
        for (auto fog : list_of<std::size_t>(g, "fog", counts)) {
          for (auto cloud : list_of<std::size_t>(g, "cloud", counts)) {
            ScenarioConfig c = base;
            c.arch = Architecture::Icn;
            c.mode = mode;
            c.fog_k = fog;
            c.cloud_k = cloud;
            c.ldns_k = 0;
            c.catchment = catchment;
            plan.configs.push_back(c);
          }
        }
      }
      if (doc.contains("dns")) {
        const auto& g = doc.at("dns");
        reject_unknown(g, {"fog", "cloud", "ldns"}, "dns");
        for (auto ldns : list_of<std::size_t>(g, "ldns", counts)) {
          for (auto fog : list_of<std::size_t>(g, "fog", counts)) {
            for (auto cloud : list_of<std::size_t>(g, "cloud", counts)) {
              ScenarioConfig c = base;
              c.arch = Architecture::Dns;
              c.mode = mode;
              c.fog_k = fog;
              c.cloud_k = cloud;
              c.ldns_k = ldns;
              c.catchment.clear();
              plan.configs.push_back(c);
            }
          }
        }
      }
    }
    if (plan.configs.empty()) throw Error("grid file defines no icn or dns configurations");
    for (const auto& c : plan.configs) c.validate();
    return plan;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid grid file: ") + e.what());
  }
}

SweepPlan load_sweep_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grid file " + path.string());
  return parse_sweep_plan(in, path.parent_path());
}

std::vector<ScenarioConfig> default_grid(const ScenarioConfig& base,
                                         std::span<const PlacementMode> modes) {
  std::vector<ScenarioConfig> out;
  const std::size_t counts[] = {2, 4, 6, 8};
  for (PlacementMode mode : modes) {
    for (auto fog : counts) {
      for (auto cloud : counts) {
        ScenarioConfig c = base;
        c.arch = Architecture::Icn;
        c.mode = mode;
        c.fog_k = fog;
        c.cloud_k = cloud;
        c.ldns_k = 0;
        out.push_back(c);
      }
    }
    for (auto ldns : counts) {
      for (auto fog : counts) {
        for (auto cloud : counts) {
          ScenarioConfig c = base;
          c.arch = Architecture::Dns;
          c.mode = mode;
          c.fog_k = fog;
          c.cloud_k = cloud;
          c.ldns_k = ldns;
          c.catchment.clear();
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, end);
}

namespace {

std::string config_prefix(const ScenarioConfig& c) {
  return std::string(to_string(c.arch)) + "," + std::to_string(c.fog_k) + "," +
         std::to_string(c.cloud_k) + "," + std::to_string(c.ldns_k) + "," +
         std::string(to_string(c.mode));
}

std::string interval_label(const std::optional<double>& interval) {
  return interval ? format_number(*interval) : "unicast";
}

}  // namespace

void write_backhaul_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "arch,fog_k,cloud_k,ldns_k,mode,T,trial,backhaul_bps\n";
  for (const auto& r : results) {
    const std::string prefix = config_prefix(r.config);
    for (const auto& series : r.backhaul) {
      for (std::size_t t = 0; t < series.per_trial.size(); ++t) {
        out << prefix << ',' << interval_label(series.interval) << ',' << t << ','
            << format_number(series.per_trial[t]) << '\n';
      }
    }
  }
}

void write_pathlen_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "arch,fog_k,cloud_k,ldns_k,mode,hops,cum_fraction\n";
  for (const auto& r : results) {
    const std::string prefix = config_prefix(r.config);
    for (const auto& p : r.path_ecdf) {
      out << prefix << ',' << p.hops << ',' << format_number(p.fraction) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "arch,fog_k,cloud_k,ldns_k,mode,T,trials,mean_backhaul_bps,std_backhaul_bps,"
         "mean_offered_bps\n";
  for (const auto& r : results) {
    const std::string prefix = config_prefix(r.config);
    for (const auto& series : r.backhaul) {
      out << prefix << ',' << interval_label(series.interval) << ',' << series.per_trial.size()
          << ',' << format_number(series.mean) << ',' << format_number(series.stddev) << ','
          << format_number(r.mean_offered) << '\n';
    }
  }
}

void write_manifest(std::ostream& out, std::span<const SweepResult> results,
                    const std::filesystem::path& topology,
                    const std::filesystem::path& population) {
  json doc;
  doc["topology"] = topology.filename().string();
  doc["population"] = population.filename().string();
  doc["notes"] = {
      "path-length ECDFs pool the client-leg samples of all trials",
      "trial seed = mix(base_seed, trial_index); identical across configurations",
      "multicast rows use the analytic catchment model; T = unicast rows are plain unicast"};
  json configs = json::array();
  for (const auto& r : results) {
    const auto& c = r.config;
    json j;
    j["arch"] = to_string(c.arch);
    j["fog_k"] = c.fog_k;
    j["cloud_k"] = c.cloud_k;
    j["ldns_k"] = c.ldns_k;
    j["mode"] = to_string(c.mode);
    j["catchment_s"] = c.catchment;
    j["items"] = c.items;
    j["alpha"] = c.alpha;
    j["bitrates_bps"] = c.bitrates;
    j["fog_cache_fraction"] = c.fog_cache_fraction;
    j["bundle_size"] = c.bundle_size;
    j["load_fraction"] = c.load_fraction;
    j["target_bps"] = c.target_bitrate;
    j["trials"] = c.trials;
    j["base_seed"] = c.base_seed;
    j["count_fallback"] = c.count_fallback;
    j["scheme"] = to_string(c.scheme);
    if (c.scheme == SchemeKind::Bloom) {
      j["bloom_m"] = c.bloom_m;
      j["bloom_k"] = c.bloom_k;
    }
    j["trial_seeds"] = r.seeds;
    configs.push_back(std::move(j));
  }
  doc["configs"] = std::move(configs);
  out << doc.dump(2) << '\n';
}

void write_outputs(const std::filesystem::path& dir, std::span<const SweepResult> results,
                   const std::filesystem::path& topology,
                   const std::filesystem::path& population) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw Error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("backhaul.csv");
    write_backhaul_csv(f, results);
  }
  {
    auto f = open("pathlen.csv");
    write_pathlen_csv(f, results);
  }
  {
    auto f = open("summary.csv");
    write_summary_csv(f, results);
  }
  {
    auto f = open("manifest.json");
    write_manifest(f, results, topology, population);
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename Row, typename Fill>
std::vector<Row> read_rows(std::istream& in, const std::string& header, std::size_t width,
                           Fill fill) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error("unexpected CSV header, expected: " + header);
  }
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != width) throw Error("CSV line " + std::to_string(line_no) + ": wrong field count");
    try {
      Row row;
      row.arch = f[0];
      row.fog_k = std::stoul(f[1]);
      row.cloud_k = std::stoul(f[2]);
      row.ldns_k = std::stoul(f[3]);
      row.mode = f[4];
      fill(row, f);
      rows.push_back(std::move(row));
    } catch (const std::logic_error& e) {
      throw Error("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

template <typename Row>
auto config_key(const Row& r) {
  return std::make_tuple(r.arch, r.fog_k, r.cloud_k, r.ldns_k, r.mode);
}

}  // namespace

std::vector<BackhaulRow> read_backhaul_csv(std::istream& in) {
  return read_rows<BackhaulRow>(
      in, "arch,fog_k,cloud_k,ldns_k,mode,T,trial,backhaul_bps", 8,
      [](BackhaulRow& row, const std::vector<std::string>& f) {
        row.interval = f[5];
        row.trial = std::stoul(f[6]);
        row.backhaul_bps = std::stod(f[7]);
      });
}

std::vector<PathLenRow> read_pathlen_csv(std::istream& in) {
  return read_rows<PathLenRow>(
      in, "arch,fog_k,cloud_k,ldns_k,mode,hops,cum_fraction", 7,
      [](PathLenRow& row, const std::vector<std::string>& f) {
        row.hops = std::stoi(f[5]);
        row.cum_fraction = std::stod(f[6]);
      });
}

void summarize_backhaul(std::span<const BackhaulRow> rows, std::ostream& out) {
  // First-appearance order of (config, T) keeps the output aligned with the
  // input file.
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::string, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> values;
  for (const auto& r : rows) {
    Key key = std::tuple_cat(config_key(r), std::make_tuple(r.interval));
    auto [it, inserted] = values.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.backhaul_bps);
  }
  out << "arch,fog_k,cloud_k,ldns_k,mode,T,trials,mean_backhaul_bps,std_backhaul_bps\n";
  for (const auto& key : order) {
    const auto& v = values[key];
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v) sq += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
    const auto& [arch, fog, cloud, ldns, mode, interval] = key;
    out << arch << ',' << fog << ',' << cloud << ',' << ldns << ',' << mode << ',' << interval
        << ',' << v.size() << ',' << format_number(mean) << ',' << format_number(sd) << '\n';
  }
}

void write_gnuplot_ecdf(std::span<const PathLenRow> rows, std::ostream& out) {
  bool first = true;
  std::optional<decltype(config_key(rows[0]))> current;
  for (const auto& r : rows) {
    auto key = config_key(r);
    if (!current || *current != key) {
      if (!first) out << "\n\n";
      first = false;
      current = key;
      out << "# arch=" << r.arch << " fog=" << r.fog_k << " cloud=" << r.cloud_k
          << " ldns=" << r.ldns_k << " mode=" << r.mode << "\n# hops cum_fraction\n";
    }
    out << r.hops << ' ' << format_number(r.cum_fraction) << '\n';
  }
}

}  // namespace fogsim
