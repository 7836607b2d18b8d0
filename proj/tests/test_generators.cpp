#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "affnet/generators.hpp"
#include "affnet/transforms.hpp"

using namespace affnet;

TEST(ErConfig, Validation) {
  EXPECT_THROW((ErConfig{0, 0.1, 2, 0}.validate()), Error);
  EXPECT_THROW((ErConfig{10, 0.1, 0, 0}.validate()), Error);
  EXPECT_THROW((ErConfig{10, 1.5, 2, 0}.validate()), Error);
  EXPECT_THROW((ErConfig{10, -0.1, 2, 0}.validate()), Error);
  EXPECT_THROW((ErConfig{10, std::nan(""), 2, 0}.validate()), Error);
  EXPECT_NO_THROW((ErConfig{1, 0.0, 1, 0}.validate()));
}

TEST(GenerateEr, Extremes) {
  EXPECT_TRUE(generate_er_affiliation({100, 0.0, 4, 1}).network.links().empty());
  const auto full = generate_er_affiliation({5, 1.0, 2, 1});
  EXPECT_EQ(full.network.links().size(), 10u);
}

TEST(GenerateEr, Deterministic) {
  const auto a = generate_er_affiliation({800, 0.01, 6, 1234});
  const auto b = generate_er_affiliation({800, 0.01, 6, 1234});
  const auto c = generate_er_affiliation({800, 0.01, 6, 1235});
  EXPECT_TRUE(a.network.same_links(b.network));
  EXPECT_EQ(a.affiliations, b.affiliations);
  EXPECT_FALSE(a.network.same_links(c.network));
}

TEST(GenerateEr, LinkCountNearExpectation) {
  double total = 0;
  for (std::uint64_t s = 0; s < 10; ++s) total += double(generate_er_affiliation({2000, 0.003, 10, s}).network.links().size());
  const double mean = total / 10;
  // C(2000, 2) * 0.003 = 5997; sd of a single draw is about 77.
  EXPECT_NEAR(mean, 5997.0, 80.0);
}

TEST(GenerateEr, LinksRespectAffiliations) {
  const auto g = generate_er_affiliation({400, 0.02, 5, 8});
  EXPECT_EQ(g.network.affiliations(), g.affiliations);
  for (const Link4& l : g.network.links()) {
    EXPECT_EQ(g.affiliations[l.source], l.source_layer);
    EXPECT_EQ(g.affiliations[l.target], l.target_layer);
  }
}

TEST(GenerateEr, AffiliationMarginalsAreUniform) {
  // Pearson chi-square of layer sizes against N/M, averaged over seeds;
  // its expectation is M - 1.
  const std::size_t n = 2000, m = 10;
  double chi_sum = 0;
  const int seeds = 30;
  for (int s = 0; s < seeds; ++s) {
    const auto g = generate_er_affiliation({n, 0.0, m, std::uint64_t(s)});
    double chi = 0;
    for (std::uint32_t l = 0; l < m; ++l) {
      const double o = double(g.affiliations.members(LayerId{l}).size());
      const double e = double(n) / double(m);
      chi += (o - e) * (o - e) / e;
    }
    EXPECT_GT(chi, 0.0);
    chi_sum += chi;
  }
  EXPECT_NEAR(chi_sum / seeds, double(m - 1), 3.0);
}

TEST(DensityReport, ErAtPaperScale) {
  const auto g = generate_er_affiliation({2000, 0.003, 10, 3});
  const DensityReport d4 = density_report(g.network);
  const DensityReport d3 = density_report(rank4_to_rank3(g.network));
  EXPECT_EQ(d4.total_cells, 2000ull * 2000 * 100);
  EXPECT_EQ(d3.total_cells, 2000ull * 2000 * 10);
  EXPECT_EQ(d4.links, d3.links);
  EXPECT_EQ(d4.stored_cells, 2 * d4.links);
  EXPECT_GT(d3.stored_cells, d4.stored_cells);
  EXPECT_NEAR(d3.fraction, 1.5e-4, 0.3e-4);
  EXPECT_NEAR(d4.fraction, 1.5e-5, 0.3e-5);
}

TEST(DensityReport, Empty) {
  const auto g = generate_er_affiliation({10, 0.0, 2, 0});
  EXPECT_EQ(density_report(g.network).fraction, 0.0);
  EXPECT_EQ(density_report(rank4_to_rank3(g.network)).stored_fraction, 0.0);
}
