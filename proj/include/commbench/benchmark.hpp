#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commbench/detection.hpp"
#include "commbench/generator.hpp"
#include "commbench/metrics.hpp"
#include "commbench/nmi.hpp"

namespace commbench {

struct BenchmarkOptions {
  std::vector<Algorithm> algorithms{all_algorithms.begin(), all_algorithms.end()};
  int instances = 5;
  int bins_per_decade = 5;
  DetectionOptions detection;
};

struct BenchmarkCell {
  int config_index = 0;
  int instance = 0;
  std::uint64_t seed = 0;  // the instance's derived generator seed
  Algorithm algorithm = Algorithm::Louvain;
  bool failed = false;
  std::string error;
  double nmi = 0.0;
  int community_count = 0;
  int singleton_count = 0;
  double runtime_seconds = 0.0;
};

// Mesoscopic profile pooled over every successful instance of one
// partition source (the reference or one algorithm).
struct ProfileAggregate {
  std::vector<int> community_sizes;
  BinnedCurve scaled_density;
  BinnedCurve avg_distance;
  BinnedCurve hub_dominance;
  std::vector<int> embeddedness_counts;  // 20 equal-width bins of [0,1]
};

struct AlgorithmAggregate {
  Algorithm algorithm = Algorithm::Louvain;
  int cells_ok = 0;
  double nmi_mean = 0.0;
  double nmi_std = 0.0;  // sample standard deviation over instances
  long long community_total = 0;
  long long singleton_total = 0;
  ProfileAggregate profile;
};

struct BenchmarkReport {
  int instances_per_config = 0;
  int bins_per_decade = 0;
  std::vector<BenchmarkCell> cells;  // config-major, instance-major, Table 1 order
  ProfileAggregate reference;
  std::vector<AlgorithmAggregate> algorithms;
};

namespace detail {

struct ProfilePoints {
  std::vector<int> sizes;
  std::vector<std::pair<double, double>> scaled_density;
  std::vector<std::pair<double, double>> avg_distance;
  std::vector<std::pair<double, double>> hub_dominance;
  std::vector<int> embeddedness_counts = std::vector<int>(20, 0);

  void absorb(const Graph& g, const Partition& p) {
    ProfileResult prof = profile_partition(g, p);
    for (const auto& c : prof.profiles) {
      sizes.push_back(c.size);
      double s = static_cast<double>(c.size);
      if (c.scaled_density) scaled_density.emplace_back(s, *c.scaled_density);
      if (c.avg_distance) avg_distance.emplace_back(s, *c.avg_distance);
      if (c.hub_dominance) hub_dominance.emplace_back(s, *c.hub_dominance);
    }
    auto hist = embeddedness_histogram(prof.node_embeddedness);
    for (std::size_t i = 0; i < hist.size(); ++i) embeddedness_counts[i] += hist[i];
  }

  ProfileAggregate finish(int bins_per_decade) const {
    ProfileAggregate agg;
    agg.community_sizes = sizes;
    agg.scaled_density = log_binned_curve(scaled_density, bins_per_decade);
    agg.avg_distance = log_binned_curve(avg_distance, bins_per_decade);
    agg.hub_dominance = log_binned_curve(hub_dominance, bins_per_decade);
    agg.embeddedness_counts = embeddedness_counts;
    return agg;
  }
};

}  // namespace detail

inline int singleton_count(const Partition& p) {
  int s = 0;
  for (const auto& c : p.communities())
    if (c.size() == 1) ++s;
  return s;
}

// Generate instances for each config, run the selected algorithms, score
// against the reference partition and pool the mesoscopic profiles.
// Per-cell failures are recorded and the run continues.
inline BenchmarkReport run_benchmark(const std::vector<GeneratorConfig>& configs,
                                     const BenchmarkOptions& opt = {}) {
  if (configs.empty()) throw std::invalid_argument("benchmark: no configs");
  if (opt.instances < 1) throw std::invalid_argument("benchmark: instances must be >= 1");
  if (opt.algorithms.empty()) throw std::invalid_argument("benchmark: no algorithms selected");
  for (const auto& cfg : configs) cfg.validate();

  BenchmarkReport report;
  report.instances_per_config = opt.instances;
  report.bins_per_decade = opt.bins_per_decade;

  detail::ProfilePoints ref_points;
  std::vector<detail::ProfilePoints> alg_points(opt.algorithms.size());
  std::vector<std::vector<double>> nmi_values(opt.algorithms.size());
  std::vector<AlgorithmAggregate> aggs(opt.algorithms.size());
  for (std::size_t a = 0; a < opt.algorithms.size(); ++a) aggs[a].algorithm = opt.algorithms[a];

  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    for (int inst = 0; inst < opt.instances; ++inst) {
      GeneratorConfig cfg = configs[ci];
      cfg.seed = Rng(cfg.seed).child(static_cast<std::uint64_t>(inst)).seed();

      GeneratedNetwork net;
      std::string gen_error;
      bool generated = true;
      try {
        net = generate(cfg);
      } catch (const std::exception& e) {
        generated = false;
        gen_error = e.what();
      }
      if (generated) ref_points.absorb(net.graph, net.reference);

      for (std::size_t a = 0; a < opt.algorithms.size(); ++a) {
        BenchmarkCell cell;
        cell.config_index = static_cast<int>(ci);
        cell.instance = inst;
        cell.seed = cfg.seed;
        cell.algorithm = opt.algorithms[a];
        if (!generated) {
          cell.failed = true;
          cell.error = "generation failed: " + gen_error;
          report.cells.push_back(std::move(cell));
          continue;
        }
        try {
          auto t0 = std::chrono::steady_clock::now();
          Partition found = run_algorithm(net.graph, opt.algorithms[a], opt.detection);
          auto t1 = std::chrono::steady_clock::now();
          cell.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
          cell.nmi = nmi(net.reference, found);
          cell.community_count = found.community_count();
          cell.singleton_count = singleton_count(found);
          nmi_values[a].push_back(cell.nmi);
          aggs[a].community_total += cell.community_count;
          aggs[a].singleton_total += cell.singleton_count;
          alg_points[a].absorb(net.graph, found);
        } catch (const std::exception& e) {
          cell.failed = true;
          cell.error = e.what();
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }

  report.reference = ref_points.finish(opt.bins_per_decade);
  for (std::size_t a = 0; a < opt.algorithms.size(); ++a) {
    AlgorithmAggregate& agg = aggs[a];
    const auto& vals = nmi_values[a];
    agg.cells_ok = static_cast<int>(vals.size());
    if (!vals.empty()) {
      double sum = 0.0;
      for (double v : vals) sum += v;
      agg.nmi_mean = sum / vals.size();
      if (vals.size() > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - agg.nmi_mean) * (v - agg.nmi_mean);
        agg.nmi_std = std::sqrt(ss / (vals.size() - 1));
      }
    }
    agg.profile = alg_points[a].finish(opt.bins_per_decade);
    report.algorithms.push_back(std::move(agg));
  }
  return report;
}

// Total absolute difference between two size distributions after log
// binning, with each bin's community count normalized by the distribution
// total. Used to compare an algorithm's size curve against the reference's.
inline double size_curve_deviation(const std::vector<int>& a, const std::vector<int>& b,
                                   int bins_per_decade) {
  auto shares = [bins_per_decade](const std::vector<int>& sizes) {
    std::vector<std::pair<int, double>> out;
    for (int s : sizes) {
      int bin = static_cast<int>(std::floor(std::log10(static_cast<double>(s)) *
                                                bins_per_decade +
                                            1e-9));
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const auto& e) { return e.first == bin; });
      if (it == out.end()) {
        out.push_back({bin, 0.0});
        it = out.end() - 1;
      }
      it->second += 1.0;
    }
    for (auto& [bin, v] : out) v /= static_cast<double>(sizes.size());
    std::sort(out.begin(), out.end());
    return out;
  };
  if (a.empty() || b.empty())
    throw std::invalid_argument("size_curve_deviation: empty size list");
  auto sa = shares(a), sb = shares(b);
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() || j < sb.size()) {
    if (j == sb.size() || (i < sa.size() && sa[i].first < sb[j].first)) {
      total += sa[i++].second;
    } else if (i == sa.size() || sb[j].first < sa[i].first) {
      total += sb[j++].second;
    } else {
      total += std::abs(sa[i++].second - sb[j++].second);
    }
  }
  return total;
}

}  // namespace commbench
