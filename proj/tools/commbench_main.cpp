#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commbench/benchmark.hpp"
#include "commbench/detection.hpp"
#include "commbench/generator.hpp"
#include "commbench/io.hpp"
#include "commbench/metrics.hpp"

namespace {

namespace fs = std::filesystem;
using commbench::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string out_path(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

struct GenerateArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int n = -1;
  double mean_degree = -1.0;
  int k_max = -1;
  double gamma = -1.0;
  double beta = -1.0;
  double mu_constant = -1.0;
  std::vector<double> mu_uniform;
  std::string wiring;
  std::vector<int> size_bounds;
  double rewire_tolerance = -1.0;
  int rewire_max_sweeps = -1;
};

commbench::GeneratorConfig build_config(const GenerateArgs& args, const CLI::App& cmd) {
  commbench::GeneratorConfig cfg;
  if (!args.config_path.empty())
    cfg = commbench::config_from_json(json::parse(commbench::load_text(args.config_path)));
  if (cmd.count("--n")) cfg.n = args.n;
  if (cmd.count("--mean-degree")) cfg.mean_degree = args.mean_degree;
  if (cmd.count("--k-max")) cfg.k_max = args.k_max;
  if (cmd.count("--gamma")) cfg.gamma = args.gamma;
  if (cmd.count("--beta")) cfg.beta = args.beta;
  if (cmd.count("--mu-constant")) cfg.mixing = commbench::MixingSpec::constant(args.mu_constant);
  if (cmd.count("--mu-uniform"))
    cfg.mixing = commbench::MixingSpec::uniform(args.mu_uniform.at(0), args.mu_uniform.at(1));
  if (cmd.count("--wiring")) {
    if (args.wiring == "configuration-model")
      cfg.wiring = commbench::WiringModel::ConfigurationModel;
    else if (args.wiring == "preferential-attachment")
      cfg.wiring = commbench::WiringModel::PreferentialAttachment;
    else
      throw std::invalid_argument(
          "config: wiring must be configuration-model or preferential-attachment");
  }
  if (cmd.count("--size-bounds"))
    cfg.size_bounds = {args.size_bounds.at(0), args.size_bounds.at(1)};
  if (cmd.count("--rewire-tolerance")) cfg.rewire_tolerance = args.rewire_tolerance;
  if (cmd.count("--rewire-max-sweeps")) cfg.rewire_max_sweeps = args.rewire_max_sweeps;
  cfg.seed = args.seed;
  cfg.validate();
  return cfg;
}

int cmd_generate(const GenerateArgs& args, const CLI::App& cmd) {
  commbench::GeneratorConfig cfg = build_config(args, cmd);
  commbench::GeneratedNetwork net = commbench::generate(cfg);

  fs::create_directories(args.out_dir);
  commbench::save_text(out_path(args.out_dir, "edges.tsv"), commbench::edge_list_text(net.graph));
  commbench::save_text(out_path(args.out_dir, "membership.tsv"),
                       commbench::membership_text(net.reference));
  commbench::save_text(out_path(args.out_dir, "mu.tsv"),
                       commbench::mu_table_text(net.mu_target, net.mu_realized));

  json manifest{{"format", "commbench-manifest-v1"},
                {"command", "generate"},
                {"config", commbench::config_to_json(cfg)},
                {"stats", commbench::stats_to_json(net.stats)},
                {"outputs",
                 {{"edges", "edges.tsv"}, {"membership", "membership.tsv"}, {"mu", "mu.tsv"}}}};
  commbench::save_text(out_path(args.out_dir, "manifest.json"), commbench::json_text(manifest));
  return 0;
}

struct DetectArgs {
  std::string edges_path;
  std::string algorithm;
  std::string out_dir = ".";
  int walktrap_t = 4;
  int mcl_expansion = 2;
  double mcl_inflation = 2.0;
  double mcl_eps = 1e-6;
  std::uint64_t infomap_seed = 0;
};

int cmd_detect(const DetectArgs& args) {
  commbench::Algorithm alg = commbench::algorithm_from_id(args.algorithm);
  commbench::Graph g = commbench::parse_edge_list(commbench::load_text(args.edges_path));

  commbench::DetectionOptions opt;
  opt.walktrap_t = args.walktrap_t;
  opt.mcl.expansion = args.mcl_expansion;
  opt.mcl.inflation = args.mcl_inflation;
  opt.mcl.prune_eps = args.mcl_eps;
  opt.infomap_seed = args.infomap_seed;

  auto t0 = std::chrono::steady_clock::now();
  commbench::Partition found = commbench::run_algorithm(g, alg, opt);
  double elapsed = seconds_since(t0);

  fs::create_directories(args.out_dir);
  commbench::save_text(out_path(args.out_dir, "membership.tsv"),
                       commbench::membership_text(found));

  json manifest{{"format", "commbench-manifest-v1"},
                {"command", "detect"},
                {"algorithm", commbench::algorithm_id(alg)},
                {"options",
                 {{"walktrap_t", opt.walktrap_t},
                  {"mcl_expansion", opt.mcl.expansion},
                  {"mcl_inflation", opt.mcl.inflation},
                  {"mcl_eps", opt.mcl.prune_eps},
                  {"infomap_seed", opt.infomap_seed}}},
                {"input", {{"edges", args.edges_path}}},
                {"summary",
                 {{"communities", found.community_count()},
                  {"singletons", commbench::singleton_count(found)}}},
                {"outputs", {{"membership", "membership.tsv"}}},
                {"timing", {{"seconds", elapsed}}}};
  commbench::save_text(out_path(args.out_dir, "manifest.json"), commbench::json_text(manifest));
  return 0;
}

struct AnalyzeArgs {
  std::string edges_path;
  std::string membership_path;
  std::string out_dir = ".";
  int bins_per_decade = 5;
};

int cmd_analyze(const AnalyzeArgs& args) {
  commbench::Graph g = commbench::parse_edge_list(commbench::load_text(args.edges_path));
  commbench::Partition p =
      commbench::parse_membership(commbench::load_text(args.membership_path));
  if (p.node_count() != g.node_count())
    throw std::runtime_error("membership covers " + std::to_string(p.node_count()) +
                             " nodes but the graph has " + std::to_string(g.node_count()));

  commbench::ProfileResult prof = commbench::profile_partition(g, p);
  std::vector<std::pair<double, double>> sd, ad, hd;
  for (const auto& c : prof.profiles) {
    double s = static_cast<double>(c.size);
    if (c.scaled_density) sd.emplace_back(s, *c.scaled_density);
    if (c.avg_distance) ad.emplace_back(s, *c.avg_distance);
    if (c.hub_dominance) hd.emplace_back(s, *c.hub_dominance);
  }

  fs::create_directories(args.out_dir);
  commbench::save_text(out_path(args.out_dir, "profiles.csv"), commbench::profiles_csv(prof));
  commbench::save_text(
      out_path(args.out_dir, "curves.csv"),
      commbench::curves_csv(commbench::log_binned_curve(sd, args.bins_per_decade),
                            commbench::log_binned_curve(ad, args.bins_per_decade),
                            commbench::log_binned_curve(hd, args.bins_per_decade)));
  commbench::save_text(out_path(args.out_dir, "embeddedness.csv"),
                       commbench::embeddedness_csv(
                           commbench::embeddedness_histogram(prof.node_embeddedness)));
  return 0;
}

struct BenchArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int instances = -1;
  std::vector<std::string> algorithms;
  int bins_per_decade = -1;
};

int cmd_bench(const BenchArgs& args, const CLI::App& cmd) {
  json spec = json::parse(commbench::load_text(args.config_path));

  std::vector<commbench::GeneratorConfig> configs;
  commbench::BenchmarkOptions opt;
  if (spec.contains("configs")) {
    for (const auto& c : spec.at("configs")) configs.push_back(commbench::config_from_json(c));
    if (spec.contains("instances")) opt.instances = spec.at("instances").get<int>();
    if (spec.contains("bins_per_decade"))
      opt.bins_per_decade = spec.at("bins_per_decade").get<int>();
    if (spec.contains("algorithms")) {
      opt.algorithms.clear();
      for (const auto& a : spec.at("algorithms"))
        opt.algorithms.push_back(commbench::algorithm_from_id(a.get<std::string>()));
    }
  } else {
    configs.push_back(commbench::config_from_json(spec));
  }
  if (cmd.count("--instances")) opt.instances = args.instances;
  if (cmd.count("--bins-per-decade")) opt.bins_per_decade = args.bins_per_decade;
  if (cmd.count("--algorithm")) {
    opt.algorithms.clear();
    for (const auto& a : args.algorithms)
      opt.algorithms.push_back(commbench::algorithm_from_id(a));
  }

  commbench::Rng base(args.seed);
  for (std::size_t i = 0; i < configs.size(); ++i)
    configs[i].seed = base.child(static_cast<std::uint64_t>(i)).seed();

  commbench::BenchmarkReport report = commbench::run_benchmark(configs, opt);

  fs::create_directories(args.out_dir);
  commbench::save_text(out_path(args.out_dir, "report.json"),
                       commbench::json_text(commbench::report_to_json(report)));
  commbench::save_text(out_path(args.out_dir, "summary.csv"),
                       commbench::bench_summary_csv(report));
  commbench::save_text(out_path(args.out_dir, "cells.csv"), commbench::bench_cells_csv(report));
  commbench::save_text(out_path(args.out_dir, "curves.csv"), commbench::bench_curves_csv(report));

  int failed = 0;
  for (const auto& cell : report.cells)
    if (cell.failed) ++failed;
  if (failed > 0) {
    json errors = json::array();
    for (const auto& cell : report.cells) {
      if (cell.failed)
        errors.push_back({{"config", cell.config_index},
                          {"instance", cell.instance},
                          {"algorithm", commbench::algorithm_id(cell.algorithm)},
                          {"error", cell.error}});
    }
    std::cerr << json{{"error", "bench: " + std::to_string(failed) + " cell(s) failed"},
                      {"cells", errors}}
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community-structure benchmark toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "generate a benchmark network");
  generate->add_option("--config", gen.config_path, "generator config JSON");
  generate->add_option("--out-dir", gen.out_dir, "output directory");
  generate->add_option("--seed", gen.seed, "rng seed")->required();
  generate->add_option("--n", gen.n, "node count");
  generate->add_option("--mean-degree", gen.mean_degree, "target mean degree");
  generate->add_option("--k-max", gen.k_max, "maximum degree");
  generate->add_option("--gamma", gen.gamma, "degree exponent");
  generate->add_option("--beta", gen.beta, "community size exponent");
  generate->add_option("--mu-constant", gen.mu_constant, "constant mixing coefficient");
  generate->add_option("--mu-uniform", gen.mu_uniform, "uniform mixing range LO HI")
      ->expected(2);
  generate->add_option("--wiring", gen.wiring,
                       "configuration-model or preferential-attachment");
  generate->add_option("--size-bounds", gen.size_bounds, "community size bounds MIN MAX")
      ->expected(2);
  generate->add_option("--rewire-tolerance", gen.rewire_tolerance, "mean |mu error| target");
  generate->add_option("--rewire-max-sweeps", gen.rewire_max_sweeps, "rewiring sweep cap");

  DetectArgs det;
  CLI::App* detect = app.add_subcommand("detect", "run a detection algorithm");
  detect->add_option("--edges", det.edges_path, "edge list file")->required();
  detect->add_option("--algorithm", det.algorithm, "algorithm name")->required();
  detect->add_option("--out-dir", det.out_dir, "output directory");
  detect->add_option("--walktrap-t", det.walktrap_t, "walktrap walk length");
  detect->add_option("--mcl-expansion", det.mcl_expansion, "MCL expansion power");
  detect->add_option("--mcl-inflation", det.mcl_inflation, "MCL inflation power");
  detect->add_option("--mcl-eps", det.mcl_eps, "MCL pruning threshold");
  detect->add_option("--infomap-seed", det.infomap_seed, "infomap seed");

  AnalyzeArgs ana;
  CLI::App* analyze = app.add_subcommand("analyze", "profile a partition");
  analyze->add_option("--edges", ana.edges_path, "edge list file")->required();
  analyze->add_option("--membership", ana.membership_path, "membership file")->required();
  analyze->add_option("--out-dir", ana.out_dir, "output directory");
  analyze->add_option("--bins-per-decade", ana.bins_per_decade, "log bin resolution");

  BenchArgs ben;
  CLI::App* bench = app.add_subcommand("bench", "generate, detect and score");
  bench->add_option("--config", ben.config_path, "bench config JSON")->required();
  bench->add_option("--out-dir", ben.out_dir, "output directory");
  bench->add_option("--seed", ben.seed, "base rng seed")->required();
  bench->add_option("--instances", ben.instances, "instances per config");
  bench->add_option("--algorithm", ben.algorithms, "algorithm selection (repeatable)");
  bench->add_option("--bins-per-decade", ben.bins_per_decade, "log bin resolution");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return cmd_generate(gen, *generate);
    if (detect->parsed()) return cmd_detect(det);
    if (analyze->parsed()) return cmd_analyze(ana);
    if (bench->parsed()) return cmd_bench(ben, *bench);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
