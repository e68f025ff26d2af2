#include "commbench/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace cb = commbench;

TEST(EdgeListText, GoldenFormat) {
  cb::Graph g = cb::build_graph(4, {{2, 3}, {0, 1}});
  EXPECT_EQ(cb::edge_list_text(g),
            "# commbench edge-list v1\n"
            "# n=4\n"
            "0\t1\n"
            "2\t3\n");
}

TEST(EdgeListText, RoundTripKeepsIsolatedNodes) {
  cb::Graph g = cb::build_graph(5, {{0, 1}, {1, 4}});
  cb::Graph back = cb::parse_edge_list(cb::edge_list_text(g));
  EXPECT_EQ(back.node_count(), 5);
  EXPECT_EQ(back.edges(), g.edges());
}

TEST(ParseEdgeList, InfersNodeCountWithoutHeader) {
  cb::Graph g = cb::parse_edge_list("0\t2\n1\t2\n");
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.edge_count(), 2);
}

TEST(ParseEdgeList, ReportsMalformedLines) {
  EXPECT_THROW(cb::parse_edge_list("0,1\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_edge_list("a\tb\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_edge_list("0\t1\t2\n"), std::runtime_error);
  try {
    cb::parse_edge_list("0 1\n");
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("0 1"), std::string::npos);
  }
}

TEST(MembershipText, GoldenFormatAndRoundTrip) {
  cb::Partition p = cb::Partition::from_membership({0, 0, 1});
  EXPECT_EQ(cb::membership_text(p),
            "# commbench membership v1\n"
            "0\t0\n"
            "1\t0\n"
            "2\t1\n");
  cb::Partition back = cb::parse_membership(cb::membership_text(p));
  EXPECT_TRUE(back.same_clustering(p));
}

TEST(ParseMembership, AcceptsArbitraryLabelsOutOfOrder) {
  cb::Partition p = cb::parse_membership("2\t3\n0\t7\n1\t7\n");
  EXPECT_EQ(p.community_count(), 2);
  EXPECT_EQ(p.community_of(0), p.community_of(1));
  EXPECT_NE(p.community_of(0), p.community_of(2));
}

TEST(ParseMembership, RejectsBadNodeSets) {
  EXPECT_THROW(cb::parse_membership("0\t0\n0\t1\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_membership("0\t0\n5\t1\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_membership("0\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_membership("# commbench membership v1\n"), std::runtime_error);
}

TEST(MuTableText, GoldenFormatAndRoundTrip) {
  std::string text = cb::mu_table_text({0.25, 1.0}, {0.333333333, 0.0});
  EXPECT_EQ(text,
            "# commbench mu-table v1\n"
            "0\t0.250000\t0.333333\n"
            "1\t1.000000\t0.000000\n");
  cb::MuTable t = cb::parse_mu_table(text);
  ASSERT_EQ(t.target.size(), 2u);
  EXPECT_DOUBLE_EQ(t.target[0], 0.25);
  EXPECT_DOUBLE_EQ(t.realized[0], 0.333333);
  EXPECT_THROW(cb::mu_table_text({0.1}, {0.1, 0.2}), std::invalid_argument);
}

TEST(ParseMuTable, RejectsUnsortedOrMalformedRows) {
  EXPECT_THROW(cb::parse_mu_table("1\t0.5\t0.5\n0\t0.5\t0.5\n"), std::runtime_error);
  EXPECT_THROW(cb::parse_mu_table("0\t0.5\n"), std::runtime_error);
}

TEST(ProfilesCsv, GoldenRowsIncludingSingleton) {
  cb::Graph g = cb::build_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  cb::Partition p = cb::Partition::from_membership({0, 0, 0, 1});
  std::string csv = cb::profiles_csv(cb::profile_partition(g, p));
  EXPECT_EQ(csv,
            "# commbench profiles-csv v1\n"
            "community,size,internal_edges,density,scaled_density,avg_distance,hub_dominance,"
            "internally_connected\n"
            "0,3,3,1,3,1,1,1\n"
            "1,1,0,,,,,1\n");
}

TEST(CurvesCsv, EmitsOneSectionPerProperty) {
  std::vector<std::pair<double, double>> pts{{10.0, 2.0}, {11.0, 4.0}, {100.0, 3.0}};
  cb::BinnedCurve curve = cb::log_binned_curve(pts, 1);
  std::string csv = cb::curves_csv(curve, curve, curve);
  auto header_pos = csv.find("property,bin_lower,bin_upper,mean,count\n");
  ASSERT_NE(header_pos, std::string::npos);
  EXPECT_EQ(csv.rfind("# commbench curves-csv v1\n", 0), 0u);
  int sd = 0, ad = 0, hd = 0;
  std::istringstream in(csv.substr(header_pos + 40));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("scaled_density,", 0) == 0) ++sd;
    if (line.rfind("avg_distance,", 0) == 0) ++ad;
    if (line.rfind("hub_dominance,", 0) == 0) ++hd;
  }
  EXPECT_EQ(sd, static_cast<int>(curve.bins.size()));
  EXPECT_EQ(ad, sd);
  EXPECT_EQ(hd, sd);
}

TEST(EmbeddednessCsv, RowsCarryEdgesCountsAndFractions) {
  std::string csv = cb::embeddedness_csv({1, 0, 3});
  EXPECT_EQ(csv,
            "# commbench embeddedness-csv v1\n"
            "bin_lower,bin_upper,count,fraction\n"
            "0,0.333333333333,1,0.25\n"
            "0.333333333333,0.666666666667,0,0\n"
            "0.666666666667,1,3,0.75\n");
}

TEST(ConfigJson, RoundTripsEveryField) {
  cb::GeneratorConfig cfg;
  cfg.n = 500;
  cfg.mean_degree = 12.0;
  cfg.k_max = 80;
  cfg.gamma = 2.5;
  cfg.beta = 1.8;
  cfg.mixing = cb::MixingSpec::quantile_table({{0.0, 0.1}, {0.5, 0.2}, {1.0, 0.9}});
  cfg.wiring = cb::WiringModel::PreferentialAttachment;
  cfg.size_bounds = {{10, 90}};
  cfg.rewire_tolerance = 0.03;
  cfg.rewire_max_sweeps = 75;
  cfg.seed = 123456789;

  cb::GeneratorConfig back = cb::config_from_json(cb::config_to_json(cfg));
  EXPECT_EQ(back.n, cfg.n);
  EXPECT_EQ(back.mean_degree, cfg.mean_degree);
  EXPECT_EQ(back.k_max, cfg.k_max);
  EXPECT_EQ(back.gamma, cfg.gamma);
  EXPECT_EQ(back.beta, cfg.beta);
  EXPECT_EQ(back.mixing.kind, cfg.mixing.kind);
  EXPECT_EQ(back.mixing.table, cfg.mixing.table);
  EXPECT_EQ(back.wiring, cfg.wiring);
  EXPECT_EQ(back.size_bounds, cfg.size_bounds);
  EXPECT_EQ(back.rewire_tolerance, cfg.rewire_tolerance);
  EXPECT_EQ(back.rewire_max_sweeps, cfg.rewire_max_sweeps);
  EXPECT_EQ(back.seed, cfg.seed);
}

TEST(ConfigJson, DefaultsAndOmittedSeed) {
  cb::GeneratorConfig cfg;  // defaults, no size_bounds
  cfg.seed = 9;
  cb::json j = cb::config_to_json(cfg);
  EXPECT_TRUE(j.at("size_bounds").is_null());

  j.erase("seed");
  cb::GeneratorConfig back = cb::config_from_json(j);
  EXPECT_EQ(back.seed, 0u);
  EXPECT_FALSE(back.size_bounds.has_value());
  EXPECT_EQ(back.mixing.kind, cb::MixingSpec::Kind::UniformRange);
}

TEST(ConfigJson, MixingKindsRoundTrip) {
  for (const cb::MixingSpec& spec :
       {cb::MixingSpec::constant(0.4), cb::MixingSpec::uniform(0.2, 0.8),
        cb::MixingSpec::quantile_table({{0.0, 0.0}, {1.0, 1.0}})}) {
    cb::MixingSpec back = cb::mixing_from_json(cb::mixing_to_json(spec));
    EXPECT_EQ(back.kind, spec.kind);
    EXPECT_EQ(back.value, spec.value);
    EXPECT_EQ(back.low, spec.low);
    EXPECT_EQ(back.high, spec.high);
    EXPECT_EQ(back.table, spec.table);
  }
}

TEST(ConfigJson, ReportsTheOffendingField) {
  cb::json j = cb::config_to_json(cb::GeneratorConfig{});
  j.erase("n");
  try {
    cb::config_from_json(j);
    FAIL() << "expected missing-field error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "config: missing field 'n'");
  }

  j = cb::config_to_json(cb::GeneratorConfig{});
  j["mean_degree"] = "fast";
  try {
    cb::config_from_json(j);
    FAIL() << "expected wrong-type error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "config: field 'mean_degree' has the wrong type");
  }

  j = cb::config_to_json(cb::GeneratorConfig{});
  j["wiring"] = "erdos-renyi";
  EXPECT_THROW(cb::config_from_json(j), std::invalid_argument);

  j = cb::config_to_json(cb::GeneratorConfig{});
  j["size_bounds"] = cb::json::array({5});
  EXPECT_THROW(cb::config_from_json(j), std::invalid_argument);

  j = cb::config_to_json(cb::GeneratorConfig{});
  j["mixing"] = {{"kind", "gaussian"}};
  EXPECT_THROW(cb::config_from_json(j), std::invalid_argument);
}

TEST(ReportJson, RoundTripsCellsAggregatesAndTiming) {
  cb::BenchmarkReport report;
  report.instances_per_config = 2;
  report.bins_per_decade = 5;

  cb::BenchmarkCell ok;
  ok.config_index = 0;
  ok.instance = 1;
  ok.seed = 42;
  ok.algorithm = cb::Algorithm::InfoMap;
  ok.nmi = 0.875;
  ok.community_count = 12;
  ok.singleton_count = 3;
  ok.runtime_seconds = 0.25;
  cb::BenchmarkCell bad;
  bad.config_index = 1;
  bad.algorithm = cb::Algorithm::MarkovCluster;
  bad.failed = true;
  bad.error = "generation failed: community sizes";
  report.cells = {ok, bad};

  report.reference.community_sizes = {5, 9, 30};
  report.reference.scaled_density = cb::log_binned_curve({{5.0, 2.5}, {30.0, 4.0}}, 5);
  report.reference.embeddedness_counts.assign(20, 1);

  cb::AlgorithmAggregate agg;
  agg.algorithm = cb::Algorithm::InfoMap;
  agg.cells_ok = 1;
  agg.nmi_mean = 0.875;
  agg.nmi_std = 0.0;
  agg.community_total = 12;
  agg.singleton_total = 3;
  agg.profile = report.reference;
  report.algorithms = {agg};

  cb::json j = cb::report_to_json(report);
  EXPECT_EQ(j.at("format"), "commbench-report-v1");
  ASSERT_TRUE(j.contains("timing"));
  EXPECT_EQ(j.at("timing").at("cell_runtime_seconds").size(), 2u);

  cb::BenchmarkReport back = cb::report_from_json(j);
  ASSERT_EQ(back.cells.size(), 2u);
  EXPECT_EQ(back.cells[0].seed, 42u);
  EXPECT_EQ(back.cells[0].algorithm, cb::Algorithm::InfoMap);
  EXPECT_EQ(back.cells[0].nmi, 0.875);
  EXPECT_EQ(back.cells[0].runtime_seconds, 0.25);
  EXPECT_TRUE(back.cells[1].failed);
  EXPECT_EQ(back.cells[1].error, "generation failed: community sizes");
  EXPECT_EQ(back.instances_per_config, 2);
  EXPECT_EQ(back.reference.community_sizes, report.reference.community_sizes);
  ASSERT_EQ(back.algorithms.size(), 1u);
  EXPECT_EQ(back.algorithms[0].cells_ok, 1);
  EXPECT_EQ(back.algorithms[0].profile.embeddedness_counts,
            report.reference.embeddedness_counts);
  ASSERT_EQ(back.reference.scaled_density.bins.size(),
            report.reference.scaled_density.bins.size());
  EXPECT_EQ(back.reference.scaled_density.bins[0].mean,
            report.reference.scaled_density.bins[0].mean);

  cb::json wrong = j;
  wrong["format"] = "something-else";
  EXPECT_THROW(cb::report_from_json(wrong), std::runtime_error);
}

TEST(JsonText, TwoSpaceIndentWithTrailingNewline) {
  cb::json j{{"b", 1}, {"a", 2}};
  std::string text = cb::json_text(j);
  EXPECT_EQ(text, "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST(TextFiles, SaveAndLoadRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "commbench_io_test.txt";
  std::string content = "line one\nline two\n";
  cb::save_text(path.string(), content);
  EXPECT_EQ(cb::load_text(path.string()), content);
  std::filesystem::remove(path);
  EXPECT_THROW(cb::load_text(path.string()), std::runtime_error);
  EXPECT_THROW(cb::save_text("/nonexistent-dir/x/y.txt", "a"), std::runtime_error);
}
