#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "affnet/generators.hpp"
#include "affnet/pipeline.hpp"
#include "affnet/transforms.hpp"
#include "toy_network.hpp"

using namespace affnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

AnalysisReport er_report(std::uint64_t seed) {
  const auto g = generate_er_affiliation({2000, 0.003, 10, seed});
  RunMetadata meta;
  meta.seed = seed;
  meta.prng = "splitmix64";
  return run_comparison(g.network, rank4_to_rank3(g.network), {}, meta);
}

}  // namespace

TEST(RunComparison, ToyHasOnlyInsufficientData) {
  const auto f = affnet::testing::toy_network();
  const AnalysisReport r = run_comparison(f.rank4, f.rank3);
  ASSERT_EQ(r.rank3.slices.size(), 2u);
  ASSERT_EQ(r.rank4.slices.size(), 4u);
  for (const auto* rep : {&r.rank3, &r.rank4}) {
    for (const SliceRecord& s : rep->slices) {
      EXPECT_FALSE(s.power_law.report) << s.label;
      EXPECT_EQ(s.power_law.failure, "InsufficientData") << s.label;
      EXPECT_FALSE(s.admits_fit());
    }
    EXPECT_EQ(rep->significance_fraction, 0.0);
    EXPECT_FALSE(rep->exponent_histogram);
  }
  EXPECT_EQ(r.rank3.slices[1].label, "2");
  EXPECT_EQ(r.rank4.slices[1].label, "1/2");
  EXPECT_EQ(r.rank3.closeness.at(0, 1), 3.0 / 7.0);
  EXPECT_EQ(r.rank3.node_activity.activity[3], 1.0);
}

TEST(RunComparison, EmptyNetwork) {
  const auto g = generate_er_affiliation({40, 0.0, 3, 0});
  const AnalysisReport r = run_comparison(g.network, rank4_to_rank3(g.network));
  for (const auto* rep : {&r.rank3, &r.rank4}) {
    EXPECT_EQ(rep->significance_fraction, 0.0);
    EXPECT_EQ(rep->admission_fraction, 0.0);
    EXPECT_EQ(rep->mean_slice_mean_degree, 0.0);
    EXPECT_EQ(rep->density.fraction, 0.0);
    for (double q : rep->closeness.values()) EXPECT_EQ(q, 0.0);
    for (const SliceRecord& s : rep->slices) EXPECT_FALSE(s.power_law.report);
    EXPECT_FALSE(rep->pair_closeness.histogram);
  }
}

TEST(RunComparison, ErMeanDegreeScalesWithM) {
  const AnalysisReport r = er_report(5);
  EXPECT_EQ(r.rank3.slices.size(), 10u);
  EXPECT_EQ(r.rank4.slices.size(), 100u);
  EXPECT_NEAR(r.rank4.mean_slice_mean_degree / r.rank3.mean_slice_mean_degree, 0.1, 0.01);
  EXPECT_NEAR(r.rank3.mean_slice_mean_degree, 0.003 * 1999, 0.5);
  for (const SliceRecord& s : r.rank3.slices) {
    ASSERT_TRUE(s.binomial.report);
    EXPECT_NEAR(s.binomial.report->p_hat, 0.003, 0.0005);
  }
}

TEST(RunComparison, RepresentationsMustMatch) {
  const auto a = generate_er_affiliation({20, 0.1, 2, 0});
  const auto b = generate_er_affiliation({21, 0.1, 2, 0});
  EXPECT_THROW(run_comparison(a.network, rank4_to_rank3(b.network)), Error);
}

TEST(RunComparison, AttachesRank4MapToBareRank3) {
  const auto f = affnet::testing::toy_network();
  const std::vector<LayerLink> links(f.rank3.links().begin(), f.rank3.links().end());
  const auto bare = build_rank3(7, 2, Directedness::Undirected, links);
  const AnalysisReport r = run_comparison(f.rank4, bare);
  EXPECT_EQ(r.rank3.slices[0].population, 4u);
}

TEST(ExportReport, WritesAllFilesDeterministically) {
  const AnalysisReport r = er_report(8);
  const fs::path a = fs::temp_directory_path() / "affnet_export_a";
  const fs::path b = fs::temp_directory_path() / "affnet_export_b";
  fs::remove_all(a);
  fs::remove_all(b);
  export_report(r, a);
  export_report(er_report(8), b);
  for (const auto& name : report_files()) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(a)) ++files;
  EXPECT_EQ(files, 7u);

  const auto j = nlohmann::json::parse(slurp(a / "report.json"));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["metadata"]["prng"], "splitmix64");
  EXPECT_EQ(j["representations"][1]["slices"].size(), 100u);

  // 10 x 10 rank-3 and 100 x 100 rank-4 closeness entries plus a header.
  std::istringstream matrix(slurp(a / "closeness_matrix.csv"));
  std::size_t lines = 0;
  for (std::string line; std::getline(matrix, line);) ++lines;
  EXPECT_EQ(lines, 1u + 100u + 10000u);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(ExportReport, NanBecomesNull) {
  const auto g = generate_er_affiliation({30, 0.0, 2, 0});
  const AnalysisReport r = run_comparison(g.network, rank4_to_rank3(g.network));
  const fs::path dir = fs::temp_directory_path() / "affnet_export_nan";
  export_report(r, dir);
  const std::string text = slurp(dir / "report.json");
  EXPECT_EQ(text.find("NaN"), std::string::npos);
  EXPECT_EQ(text.find("nan"), std::string::npos);
  const auto j = nlohmann::json::parse(text);
  EXPECT_TRUE(j["representations"][0]["slices"][0]["binomial"]["pearson_r"].is_null());
  fs::remove_all(dir);
}

TEST(ExportReport, UnwritableDirectory) {
  const auto f = affnet::testing::toy_network();
  const fs::path file = fs::temp_directory_path() / "affnet_not_a_dir";
  std::ofstream(file) << "x";
  EXPECT_THROW(export_report(run_comparison(f.rank4, f.rank3), file / "sub"), Error);
  fs::remove(file);
}
