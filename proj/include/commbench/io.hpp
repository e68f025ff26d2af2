#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "commbench/benchmark.hpp"
#include "commbench/generator.hpp"
#include "commbench/graph.hpp"
#include "commbench/metrics.hpp"

namespace commbench {

using json = nlohmann::json;

inline void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt_fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline long long parse_int(std::string_view s, const std::string& what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("cannot parse " + what + " from \"" + std::string(s) + "\"");
  return value;
}

inline double parse_real(std::string_view s, const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("cannot parse " + what + " from \"" + std::string(s) + "\"");
  return value;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = line.find('\t', start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------- edge list

// "u<TAB>v" per line with u < v, sorted; '#' header lines carry the format
// version and the node count (isolated nodes would otherwise be lost).
inline std::string edge_list_text(const Graph& g) {
  std::string out = "# commbench edge-list v1\n# n=" + std::to_string(g.node_count()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += '\t';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

inline Graph parse_edge_list(const std::string& text) {
  int n = -1;
  EdgeList edges;
  for (std::string_view line : detail::split_lines(text)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view n_tag = "# n=";
      if (line.substr(0, n_tag.size()) == n_tag)
        n = static_cast<int>(detail::parse_int(line.substr(n_tag.size()), "node count header"));
      continue;
    }
    auto fields = detail::split_tabs(line);
    if (fields.size() != 2)
      throw std::runtime_error("edge list: expected two tab-separated ids, got \"" +
                               std::string(line) + "\"");
    int u = static_cast<int>(detail::parse_int(fields[0], "edge endpoint"));
    int v = static_cast<int>(detail::parse_int(fields[1], "edge endpoint"));
    edges.emplace_back(u, v);
  }
  if (n < 0) {
    for (const auto& [u, v] : edges) n = std::max({n, u, v});
    ++n;
  }
  return Graph::from_edges(n, edges);
}

// --------------------------------------------------------------- membership

inline std::string membership_text(const Partition& p) {
  std::string out = "# commbench membership v1\n";
  for (int u = 0; u < p.node_count(); ++u) {
    out += std::to_string(u);
    out += '\t';
    out += std::to_string(p.community_of(u));
    out += '\n';
  }
  return out;
}

// Accepts arbitrary community labels (remapped by first appearance); node
// ids must be exactly 0..n-1, each appearing once.
inline Partition parse_membership(const std::string& text) {
  std::vector<std::pair<int, int>> rows;
  for (std::string_view line : detail::split_lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 2)
      throw std::runtime_error("membership: expected \"node<TAB>community\", got \"" +
                               std::string(line) + "\"");
    rows.emplace_back(static_cast<int>(detail::parse_int(fields[0], "node id")),
                      static_cast<int>(detail::parse_int(fields[1], "community id")));
  }
  std::vector<int> membership(rows.size(), -1);
  std::vector<char> seen(rows.size(), 0);
  for (auto [u, c] : rows) {
    if (u < 0 || u >= static_cast<int>(rows.size()) || seen[u])
      throw std::runtime_error("membership: node ids must cover 0.." +
                               std::to_string(rows.size() - 1) + " exactly once (node " +
                               std::to_string(u) + ")");
    seen[u] = 1;
    membership[u] = c;
  }
  if (rows.empty()) throw std::runtime_error("membership: no rows");
  return Partition::from_membership(membership);
}

// ----------------------------------------------------------------- mu table

struct MuTable {
  std::vector<double> target;
  std::vector<double> realized;
};

inline std::string mu_table_text(const std::vector<double>& target,
                                 const std::vector<double>& realized) {
  if (target.size() != realized.size())
    throw std::invalid_argument("mu table: target/realized size mismatch");
  std::string out = "# commbench mu-table v1\n";
  for (std::size_t u = 0; u < target.size(); ++u) {
    out += std::to_string(u);
    out += '\t';
    out += detail::fmt_fixed6(target[u]);
    out += '\t';
    out += detail::fmt_fixed6(realized[u]);
    out += '\n';
  }
  return out;
}

inline MuTable parse_mu_table(const std::string& text) {
  MuTable t;
  int expected = 0;
  for (std::string_view line : detail::split_lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 3)
      throw std::runtime_error("mu table: expected three tab-separated fields, got \"" +
                               std::string(line) + "\"");
    if (detail::parse_int(fields[0], "node id") != expected)
      throw std::runtime_error("mu table: rows must be sorted by node id");
    ++expected;
    t.target.push_back(detail::parse_real(fields[1], "mu target"));
    t.realized.push_back(detail::parse_real(fields[2], "mu realized"));
  }
  return t;
}

// --------------------------------------------------------------------- CSV

inline std::string profiles_csv(const ProfileResult& prof) {
  std::string out = "# commbench profiles-csv v1\n";
  out +=
      "community,size,internal_edges,density,scaled_density,avg_distance,hub_dominance,"
      "internally_connected\n";
  for (const auto& c : prof.profiles) {
    out += std::to_string(c.community);
    out += ',';
    out += std::to_string(c.size);
    out += ',';
    out += std::to_string(c.internal_edges);
    out += ',';
    if (c.density) out += detail::fmt_double(*c.density);
    out += ',';
    if (c.scaled_density) out += detail::fmt_double(*c.scaled_density);
    out += ',';
    if (c.avg_distance) out += detail::fmt_double(*c.avg_distance);
    out += ',';
    if (c.hub_dominance) out += detail::fmt_double(*c.hub_dominance);
    out += ',';
    out += c.internally_connected ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline void append_curve_rows(std::string& out, const std::string& prefix,
                              const BinnedCurve& curve) {
  for (const auto& b : curve.bins) {
    out += prefix;
    out += ',';
    out += detail::fmt_double(b.lower);
    out += ',';
    out += detail::fmt_double(b.upper);
    out += ',';
    out += detail::fmt_double(b.mean);
    out += ',';
    out += std::to_string(b.count);
    out += '\n';
  }
}

inline std::string curves_csv(const BinnedCurve& scaled_density, const BinnedCurve& avg_distance,
                              const BinnedCurve& hub_dominance) {
  std::string out = "# commbench curves-csv v1\n";
  out += "property,bin_lower,bin_upper,mean,count\n";
  append_curve_rows(out, "scaled_density", scaled_density);
  append_curve_rows(out, "avg_distance", avg_distance);
  append_curve_rows(out, "hub_dominance", hub_dominance);
  return out;
}

inline std::string embeddedness_csv(const std::vector<int>& hist) {
  long long total = 0;
  for (int c : hist) total += c;
  std::string out = "# commbench embeddedness-csv v1\n";
  out += "bin_lower,bin_upper,count,fraction\n";
  const int bins = static_cast<int>(hist.size());
  for (int b = 0; b < bins; ++b) {
    out += detail::fmt_double(static_cast<double>(b) / bins);
    out += ',';
    out += detail::fmt_double(static_cast<double>(b + 1) / bins);
    out += ',';
    out += std::to_string(hist[b]);
    out += ',';
    out += detail::fmt_double(total > 0 ? static_cast<double>(hist[b]) / total : 0.0);
    out += '\n';
  }
  return out;
}

inline std::string bench_summary_csv(const BenchmarkReport& report) {
  std::string out = "# commbench bench-summary-csv v1\n";
  out += "algorithm,cells_ok,nmi_mean,nmi_std,communities_total,singletons_total\n";
  for (const auto& agg : report.algorithms) {
    out += algorithm_id(agg.algorithm);
    out += ',';
    out += std::to_string(agg.cells_ok);
    out += ',';
    out += detail::fmt_double(agg.nmi_mean);
    out += ',';
    out += detail::fmt_double(agg.nmi_std);
    out += ',';
    out += std::to_string(agg.community_total);
    out += ',';
    out += std::to_string(agg.singleton_total);
    out += '\n';
  }
  return out;
}

inline std::string bench_cells_csv(const BenchmarkReport& report) {
  std::string out = "# commbench bench-cells-csv v1\n";
  out += "config,instance,seed,algorithm,failed,nmi,communities,singletons\n";
  for (const auto& cell : report.cells) {
    out += std::to_string(cell.config_index);
    out += ',';
    out += std::to_string(cell.instance);
    out += ',';
    out += std::to_string(cell.seed);
    out += ',';
    out += algorithm_id(cell.algorithm);
    out += ',';
    out += cell.failed ? '1' : '0';
    out += ',';
    out += detail::fmt_double(cell.nmi);
    out += ',';
    out += std::to_string(cell.community_count);
    out += ',';
    out += std::to_string(cell.singleton_count);
    out += '\n';
  }
  return out;
}

inline std::string bench_curves_csv(const BenchmarkReport& report) {
  std::string out = "# commbench bench-curves-csv v1\n";
  out += "source,property,bin_lower,bin_upper,mean,count\n";
  auto emit = [&](const std::string& source, const ProfileAggregate& prof) {
    append_curve_rows(out, source + ",scaled_density", prof.scaled_density);
    append_curve_rows(out, source + ",avg_distance", prof.avg_distance);
    append_curve_rows(out, source + ",hub_dominance", prof.hub_dominance);
  };
  emit("reference", report.reference);
  for (const auto& agg : report.algorithms) emit(algorithm_id(agg.algorithm), agg.profile);
  return out;
}

// -------------------------------------------------------------------- JSON

inline json mixing_to_json(const MixingSpec& spec) {
  switch (spec.kind) {
    case MixingSpec::Kind::Constant:
      return {{"kind", "constant"}, {"value", spec.value}};
    case MixingSpec::Kind::UniformRange:
      return {{"kind", "uniform"}, {"low", spec.low}, {"high", spec.high}};
    case MixingSpec::Kind::QuantileTable: {
      json pts = json::array();
      for (auto [q, v] : spec.table) pts.push_back(json::array({q, v}));
      return {{"kind", "quantile_table"}, {"points", pts}};
    }
  }
  throw std::logic_error("mixing_to_json: bad kind");
}

inline MixingSpec mixing_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return MixingSpec::constant(j.at("value").get<double>());
  if (kind == "uniform")
    return MixingSpec::uniform(j.at("low").get<double>(), j.at("high").get<double>());
  if (kind == "quantile_table") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j.at("points"))
      pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return MixingSpec::quantile_table(std::move(pts));
  }
  throw std::invalid_argument("config: mixing.kind must be constant, uniform or quantile_table");
}

inline json config_to_json(const GeneratorConfig& cfg) {
  json j{{"n", cfg.n},
         {"mean_degree", cfg.mean_degree},
         {"k_max", cfg.k_max},
         {"gamma", cfg.gamma},
         {"beta", cfg.beta},
         {"mixing", mixing_to_json(cfg.mixing)},
         {"wiring", cfg.wiring == WiringModel::ConfigurationModel ? "configuration-model"
                                                                  : "preferential-attachment"},
         {"rewire_tolerance", cfg.rewire_tolerance},
         {"rewire_max_sweeps", cfg.rewire_max_sweeps},
         {"seed", cfg.seed}};
  if (cfg.size_bounds)
    j["size_bounds"] = json::array({cfg.size_bounds->first, cfg.size_bounds->second});
  else
    j["size_bounds"] = nullptr;
  return j;
}

inline GeneratorConfig config_from_json(const json& j) {
  GeneratorConfig cfg;
  auto grab = [&](const char* field, auto& into) {
    if (!j.contains(field)) throw std::invalid_argument(std::string("config: missing field '") + field + "'");
    try {
      j.at(field).get_to(into);
    } catch (const json::exception&) {
      throw std::invalid_argument(std::string("config: field '") + field + "' has the wrong type");
    }
  };
  grab("n", cfg.n);
  grab("mean_degree", cfg.mean_degree);
  grab("k_max", cfg.k_max);
  grab("gamma", cfg.gamma);
  grab("beta", cfg.beta);
  if (!j.contains("mixing")) throw std::invalid_argument("config: missing field 'mixing'");
  cfg.mixing = mixing_from_json(j.at("mixing"));
  std::string wiring = "configuration-model";
  if (j.contains("wiring")) grab("wiring", wiring);
  if (wiring == "configuration-model")
    cfg.wiring = WiringModel::ConfigurationModel;
  else if (wiring == "preferential-attachment")
    cfg.wiring = WiringModel::PreferentialAttachment;
  else
    throw std::invalid_argument(
        "config: wiring must be configuration-model or preferential-attachment");
  if (j.contains("size_bounds") && !j.at("size_bounds").is_null()) {
    const auto& b = j.at("size_bounds");
    if (!b.is_array() || b.size() != 2)
      throw std::invalid_argument("config: size_bounds must be [min, max]");
    cfg.size_bounds = {b.at(0).get<int>(), b.at(1).get<int>()};
  }
  if (j.contains("rewire_tolerance")) grab("rewire_tolerance", cfg.rewire_tolerance);
  if (j.contains("rewire_max_sweeps")) grab("rewire_max_sweeps", cfg.rewire_max_sweeps);
  if (j.contains("seed")) grab("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

inline json stats_to_json(const GenerationStats& s) {
  return {{"solved_k_min", s.solved_k_min},
          {"wiring",
           {{"requested_edges", s.wiring.requested_edges},
            {"realized_edges", s.wiring.realized_edges},
            {"dropped_stubs", s.wiring.dropped_stubs},
            {"repair_rounds", s.wiring.repair_rounds}}},
          {"assignment_attempts", s.assignment_attempts},
          {"clamped_nodes", s.clamped_nodes},
          {"rewire",
           {{"mean_abs_error", s.rewire.mean_abs_error},
            {"sweeps", s.rewire.sweeps},
            {"swaps", s.rewire.swaps},
            {"converged", s.rewire.converged}}},
          {"realized_mean_degree", s.realized_mean_degree},
          {"community_count", s.community_count}};
}

inline json curve_to_json(const BinnedCurve& curve) {
  json arr = json::array();
  for (const auto& b : curve.bins)
    arr.push_back({{"lower", b.lower}, {"upper", b.upper}, {"mean", b.mean}, {"count", b.count}});
  return arr;
}

inline BinnedCurve curve_from_json(const json& arr) {
  BinnedCurve curve;
  for (const auto& b : arr) {
    curve.bins.push_back({b.at("lower").get<double>(), b.at("upper").get<double>(),
                          b.at("mean").get<double>(), b.at("count").get<int>()});
  }
  return curve;
}

inline json profile_aggregate_to_json(const ProfileAggregate& prof) {
  return {{"community_sizes", prof.community_sizes},
          {"scaled_density", curve_to_json(prof.scaled_density)},
          {"avg_distance", curve_to_json(prof.avg_distance)},
          {"hub_dominance", curve_to_json(prof.hub_dominance)},
          {"embeddedness_counts", prof.embeddedness_counts}};
}

inline ProfileAggregate profile_aggregate_from_json(const json& j) {
  ProfileAggregate prof;
  j.at("community_sizes").get_to(prof.community_sizes);
  prof.scaled_density = curve_from_json(j.at("scaled_density"));
  prof.avg_distance = curve_from_json(j.at("avg_distance"));
  prof.hub_dominance = curve_from_json(j.at("hub_dominance"));
  j.at("embeddedness_counts").get_to(prof.embeddedness_counts);
  return prof;
}

// Wall-clock runtimes live in a top-level "timing" object so determinism
// checks can strip a single key; everything else in the report is a pure
// function of config and seed.
inline json report_to_json(const BenchmarkReport& report) {
  json cells = json::array();
  json timing = json::array();
  for (const auto& cell : report.cells) {
    cells.push_back({{"config", cell.config_index},
                     {"instance", cell.instance},
                     {"seed", cell.seed},
                     {"algorithm", algorithm_id(cell.algorithm)},
                     {"failed", cell.failed},
                     {"error", cell.error},
                     {"nmi", cell.nmi},
                     {"communities", cell.community_count},
                     {"singletons", cell.singleton_count}});
    timing.push_back(cell.runtime_seconds);
  }
  json algs = json::array();
  for (const auto& agg : report.algorithms) {
    algs.push_back({{"algorithm", algorithm_id(agg.algorithm)},
                    {"cells_ok", agg.cells_ok},
                    {"nmi_mean", agg.nmi_mean},
                    {"nmi_std", agg.nmi_std},
                    {"communities_total", agg.community_total},
                    {"singletons_total", agg.singleton_total},
                    {"profile", profile_aggregate_to_json(agg.profile)}});
  }
  return {{"format", "commbench-report-v1"},
          {"instances_per_config", report.instances_per_config},
          {"bins_per_decade", report.bins_per_decade},
          {"cells", cells},
          {"reference", profile_aggregate_to_json(report.reference)},
          {"algorithms", algs},
          {"timing", {{"cell_runtime_seconds", timing}}}};
}

inline BenchmarkReport report_from_json(const json& j) {
  if (j.at("format").get<std::string>() != "commbench-report-v1")
    throw std::runtime_error("report: unknown format tag");
  BenchmarkReport report;
  j.at("instances_per_config").get_to(report.instances_per_config);
  j.at("bins_per_decade").get_to(report.bins_per_decade);
  const json& timing = j.at("timing").at("cell_runtime_seconds");
  std::size_t i = 0;
  for (const auto& c : j.at("cells")) {
    BenchmarkCell cell;
    c.at("config").get_to(cell.config_index);
    c.at("instance").get_to(cell.instance);
    c.at("seed").get_to(cell.seed);
    cell.algorithm = algorithm_from_id(c.at("algorithm").get<std::string>());
    c.at("failed").get_to(cell.failed);
    c.at("error").get_to(cell.error);
    c.at("nmi").get_to(cell.nmi);
    c.at("communities").get_to(cell.community_count);
    c.at("singletons").get_to(cell.singleton_count);
    if (i < timing.size()) cell.runtime_seconds = timing.at(i).get<double>();
    ++i;
    report.cells.push_back(std::move(cell));
  }
  report.reference = profile_aggregate_from_json(j.at("reference"));
  for (const auto& a : j.at("algorithms")) {
    AlgorithmAggregate agg;
    agg.algorithm = algorithm_from_id(a.at("algorithm").get<std::string>());
    a.at("cells_ok").get_to(agg.cells_ok);
    a.at("nmi_mean").get_to(agg.nmi_mean);
    a.at("nmi_std").get_to(agg.nmi_std);
    a.at("communities_total").get_to(agg.community_total);
    a.at("singletons_total").get_to(agg.singleton_total);
    agg.profile = profile_aggregate_from_json(a.at("profile"));
    report.algorithms.push_back(std::move(agg));
  }
  return report;
}

inline std::string json_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace commbench
