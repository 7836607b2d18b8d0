#include <gtest/gtest.h>

#include <vector>

#include "affnet/generators.hpp"
#include "affnet/metrics.hpp"
#include "affnet/transforms.hpp"
#include "dense_oracle.hpp"
#include "toy_network.hpp"

using namespace affnet;
using affnet::testing::ToyNetwork;

TEST(SliceDegrees, ToyRank3) {
  const ToyNetwork f = affnet::testing::toy_network();
  const DegreeVector l1 = slice_degrees(f.rank3, Slice::layer(ToyNetwork::L1));
  EXPECT_EQ(l1.raw, (std::vector<std::uint32_t>{1, 1, 1, 3, 1, 1, 0}));
  EXPECT_DOUBLE_EQ(l1.normalized[index(ToyNetwork::D)], 3.0 / 7.0);
  const DegreeVector l2 = slice_degrees(f.rank3, Slice::layer(ToyNetwork::L2));
  EXPECT_EQ(l2.raw, (std::vector<std::uint32_t>{0, 0, 0, 2, 2, 1, 1}));
  ASSERT_TRUE(l1.members);
  EXPECT_EQ(l1.members->size(), 4u);
}

TEST(SliceDegrees, ToyRank4) {
  const ToyNetwork f = affnet::testing::toy_network();
  const DegreeVector d12 = slice_degrees(f.rank4, Slice::layer_pair(ToyNetwork::L1, ToyNetwork::L2));
  EXPECT_EQ(d12.raw, (std::vector<std::uint32_t>{0, 0, 0, 2, 0, 0, 0}));
  const DegreeVector d21 = slice_degrees(f.rank4, Slice::layer_pair(ToyNetwork::L2, ToyNetwork::L1));
  EXPECT_EQ(d21.raw, (std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 0}));
  const DegreeVector d11 = slice_degrees(f.rank4, Slice::layer_pair(ToyNetwork::L1, ToyNetwork::L1));
  EXPECT_EQ(d11.raw[index(ToyNetwork::D)], 1u);
}

TEST(SliceDegrees, RejectsForeignSlice) {
  const ToyNetwork f = affnet::testing::toy_network();
  EXPECT_THROW(slice_degrees(f.rank3, Slice::layer_pair(ToyNetwork::L1, ToyNetwork::L1)), Error);
  EXPECT_THROW(slice_degrees(f.rank4, Slice::layer(ToyNetwork::L1)), Error);
}

TEST(SliceDegrees, DirectedInAndOut) {
  const std::vector<Link4> links = {{NodeId{0}, NodeId{1}, LayerId{0}, LayerId{0}},
                                    {NodeId{2}, NodeId{1}, LayerId{0}, LayerId{0}}};
  const auto a4 = build_rank4(3, 1, Directedness::Directed, links, AffiliationMap::from_layers(
                                                                           std::vector<LayerId>(3, LayerId{0})));
  const Slice s = Slice::layer_pair(LayerId{0}, LayerId{0});
  EXPECT_EQ(slice_degrees(a4, s).raw, (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(slice_degrees(a4, s, DegreeMode::In).raw, (std::vector<std::uint32_t>{0, 2, 0}));
}

TEST(DegreeDistribution, MembersAndZeros) {
  const ToyNetwork f = affnet::testing::toy_network();
  const DegreeVector l1 = slice_degrees(f.rank3, Slice::layer(ToyNetwork::L1));
  // Members of layer 1 are A..D with degrees 1, 1, 1, 3.
  const DegreeDistribution d = degree_distribution(l1, kPowerLawSample);
  ASSERT_EQ(d.bins.size(), 2u);
  EXPECT_EQ(d.sample_size, 4u);
  EXPECT_EQ(d.bins[0].k, 1u);
  EXPECT_DOUBLE_EQ(d.bins[0].probability, 0.75);
  EXPECT_DOUBLE_EQ(d.mean(), 1.5);

  const DegreeDistribution all = degree_distribution(l1, {true, Population::AllNodes});
  EXPECT_EQ(all.sample_size, 7u);
  EXPECT_EQ(all.bins.front().k, 0u);
}

TEST(NodeActivity, ToyNetwork) {
  const ToyNetwork f = affnet::testing::toy_network();
  const auto b3 = node_activity(f.rank3);
  const auto b4 = node_activity(f.rank4);
  EXPECT_EQ(b3[index(ToyNetwork::D)], 1.0);
  EXPECT_EQ(b4[index(ToyNetwork::D)], 0.5);
  EXPECT_EQ(b3[index(ToyNetwork::A)], 0.5);
  EXPECT_EQ(b4[index(ToyNetwork::A)], 0.25);
  EXPECT_EQ(b3[index(ToyNetwork::E)], 1.0);
}

TEST(Closeness, ToyNetwork) {
  const ToyNetwork f = affnet::testing::toy_network();
  const ClosenessTable q3 = closeness_table(f.rank3);
  // Layer 1 holds A-D plus E and F through the overlapping links.
  EXPECT_EQ(q3.at(0, 0), 6.0 / 7.0);
  EXPECT_EQ(q3.at(1, 1), 4.0 / 7.0);
  EXPECT_EQ(q3.at(0, 1), 3.0 / 7.0);
  EXPECT_EQ(q3.at(1, 0), 3.0 / 7.0);
  EXPECT_EQ(slice_pair_closeness(f.rank3, Slice::layer(ToyNetwork::L1), Slice::layer(ToyNetwork::L2)), 3.0 / 7.0);
  EXPECT_EQ(q3.centralities()[0], (6.0 / 7.0 + 3.0 / 7.0) / 2.0);
  EXPECT_EQ(slice_closeness_centrality(f.rank3, Slice::layer(ToyNetwork::L1)), q3.centralities()[0]);

  const ClosenessTable q4 = closeness_table(f.rank4);
  ASSERT_EQ(q4.n_slices(), 4u);
  // (1,2) has D active; (2,1) has E and F.
  EXPECT_EQ(q4.at(1, 1), 1.0 / 7.0);
  EXPECT_EQ(q4.at(2, 2), 2.0 / 7.0);
  EXPECT_EQ(q4.at(1, 2), 0.0);
  EXPECT_EQ(q4.at(0, 1), 1.0 / 7.0);
}

TEST(Closeness, CentralityMatchesTableOnEr) {
  const auto g = generate_er_affiliation({300, 0.02, 4, 3});
  const ClosenessTable q = closeness_table(g.network);
  const auto c = q.centralities();
  for (std::size_t x = 0; x < q.n_slices(); ++x)
    EXPECT_EQ(slice_closeness_centrality(g.network, g.network.slices()[x]), c[x]);
}

TEST(DenseOracle, ExhaustiveSmallNetworks) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      affnet::testing::for_each_network(n, m, Directedness::Undirected, [](const Rank4Network& a4) {
        const Rank3Network a3 = rank4_to_rank3(a4);
        for (const SlicedView& view : {SlicedView(a3), SlicedView(a4)}) {
          const auto t = view.representation() == Representation::Rank3 ? affnet::testing::dense(a3)
                                                                          : affnet::testing::dense(a4);
          for (std::size_t s = 0; s < view.m_bar(); ++s)
            ASSERT_EQ(slice_degrees(view, view.slices()[s]).raw, affnet::testing::dense_degrees(t, s));
          ASSERT_EQ(node_activity(view), affnet::testing::dense_activity(t));
          const ClosenessTable q = closeness_table(view);
          const auto dq = affnet::testing::dense_closeness(t);
          ASSERT_TRUE(std::equal(q.values().begin(), q.values().end(), dq.begin(), dq.end()));
        }
      });
}

TEST(EmptyNetwork, AllZero) {
  const auto g = generate_er_affiliation({50, 0.0, 3, 1});
  const Rank3Network a3 = rank4_to_rank3(g.network);
  for (double b : node_activity(a3)) EXPECT_EQ(b, 0.0);
  const ClosenessTable q4 = closeness_table(g.network);
  for (double q : q4.values()) EXPECT_EQ(q, 0.0);
  EXPECT_TRUE(degree_distribution(slice_degrees(a3, Slice::layer(LayerId{0}))).bins.empty());
}
