#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "affnet/generators.hpp"
#include "affnet/io.hpp"
#include "affnet/random.hpp"
#include "affnet/transforms.hpp"
#include "toy_network.hpp"

using namespace affnet;
namespace fs = std::filesystem;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::InvalidArgument;
}

IngestResult ingest_text(const std::string& edges, const std::string& affs, IngestOptions opts = {}) {
  std::istringstream e(edges), a(affs);
  return ingest(e, a, opts);
}

std::string error_message(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("affnet_io_" + std::to_string(counter_++) + "_" +
                                                 std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST(Ingest, TwoEdgeExample) {
  const auto r = ingest_text("A\tB\nA\tC\n", "A\t1\nB\t1\nC\t2\n");
  const auto A = NodeId{0}, B = NodeId{1}, C = NodeId{2};
  const auto L1 = LayerId{0}, L2 = LayerId{1};
  EXPECT_EQ(r.rank4.links().size(), 2u);
  EXPECT_TRUE(r.rank4.has_link(A, B, L1, L1));
  EXPECT_TRUE(r.rank4.has_link(A, C, L1, L2));
  EXPECT_TRUE(r.rank3.has_link(A, C, L2));
  EXPECT_EQ(r.rank4.node_labels().label(2), "C");
  EXPECT_EQ(r.rank4.layer_labels().label(1), "2");
  EXPECT_EQ(r.stats.links, 2u);
}

TEST(Ingest, CommaHeaderCrlfAndComments) {
  const auto r = ingest_text("# exported\r\nsource,target\r\n x , y \r\n\r\ny,z\r\n",
                             "node,affiliation\nx,math\ny,math\nz,cs\n");
  EXPECT_EQ(r.stats.edge_rows, 2u);
  EXPECT_EQ(r.rank4.links().size(), 2u);
  EXPECT_EQ(r.rank4.node_labels().label(0), "x");
}

TEST(Ingest, DuplicatesCollapse) {
  const auto r = ingest_text("a\tb\nb\ta\na\tb\n", "a\tL\nb\tL\n");
  EXPECT_EQ(r.stats.duplicate_rows, 2u);
  EXPECT_EQ(r.rank4.links().size(), 1u);
  EXPECT_FALSE(r.warnings.empty());

  const auto d = ingest_text("a\tb\nb\ta\na\tb\n", "a\tL\nb\tL\n", {Directedness::Directed});
  EXPECT_EQ(d.stats.duplicate_rows, 1u);
  EXPECT_EQ(d.rank4.links().size(), 2u);
}

TEST(Ingest, StrictAndLenient) {
  EXPECT_EQ(code_of([] { ingest_text("a\tb\na\tz\n", "a\tL\nb\tL\n"); }), Errc::MissingAffiliation);
  EXPECT_EQ(code_of([] { ingest_text("a\ta\n", "a\tL\n"); }), Errc::SelfLoop);

  IngestOptions lenient;
  lenient.strict = false;
  const auto r = ingest_text("a\tb\na\tz\nq\tz\na\ta\n", "a\tL\nb\tL\n", lenient);
  EXPECT_EQ(r.stats.rows_missing_affiliation, 2u);
  EXPECT_EQ(r.stats.unaffiliated_labels, 2u);
  EXPECT_EQ(r.stats.self_loops_skipped, 1u);
  EXPECT_EQ(r.rank4.links().size(), 1u);
}

TEST(Ingest, ParseErrorsCarryLineNumbers) {
  EXPECT_NE(error_message([] { ingest_text("a\tb\nc\n", "a\tL\nb\tL\n"); }).find(":2:"), std::string::npos);
  EXPECT_EQ(code_of([] { ingest_text("a b\n", "a\tL\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { ingest_text("", "a\tL\na\tM\n"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { ingest_text("a\t\n", "a\tL\n"); }), Errc::ParseError);
}

TEST(Ingest, ReportsBothNodeTotals) {
  IngestOptions lenient;
  lenient.strict = false;
  const auto r = ingest_text("a\tb\nb\tc\n", "a\tL\nb\tL\nc\tM\nd\tM\n", lenient);
  EXPECT_EQ(r.stats.affiliated_nodes, 4u);
  EXPECT_EQ(r.stats.nodes_on_edges, 3u);
  EXPECT_EQ(r.rank4.n_nodes(), 4u);
}

TEST(NetworkFiles, RoundTripBothRanks) {
  TempDir dir;
  const auto g = generate_er_affiliation({300, 0.02, 6, 4});
  write_network(g.network, dir.path() / "n4");
  const Rank3Network a3 = rank4_to_rank3(g.network);
  write_network(a3, dir.path() / "n3");

  const StoredNetwork r4 = read_network(dir.path() / "n4");
  ASSERT_TRUE(std::holds_alternative<Rank4Network>(r4));
  EXPECT_TRUE(std::get<Rank4Network>(r4).same_links(g.network));
  EXPECT_EQ(std::get<Rank4Network>(r4).affiliations(), g.affiliations);
  EXPECT_EQ(std::get<Rank4Network>(r4).node_labels(), g.network.node_labels());

  const StoredNetwork r3 = read_network(dir.path() / "n3");
  ASSERT_TRUE(std::holds_alternative<Rank3Network>(r3));
  EXPECT_TRUE(std::get<Rank3Network>(r3).same_links(a3));
  EXPECT_EQ(std::get<Rank3Network>(r3).affiliations(), a3.affiliations());
}

TEST(NetworkFiles, ExportedFilesReingest) {
  TempDir dir;
  const auto f = affnet::testing::toy_network();
  write_network(f.rank4, dir.path() / "toy_network");
  const auto r = ingest_files(edges_path(dir.path() / "toy_network"), affiliations_path(dir.path() / "toy_network"));
  EXPECT_TRUE(r.rank4.same_links(f.rank4));
  EXPECT_EQ(r.affiliations, f.rank4.affiliations());
  EXPECT_EQ(r.rank4.node_labels(), f.rank4.node_labels());
}

TEST(NetworkFiles, IndeterminateRank3Survives) {
  TempDir dir;
  const std::vector<LayerLink> links = {{NodeId{0}, NodeId{1}, LayerId{0}}, {NodeId{0}, NodeId{1}, LayerId{1}}};
  const auto a3 = build_rank3(3, 2, Directedness::Directed, links);
  write_network(a3, dir.path() / "x");
  const auto back = std::get<Rank3Network>(read_network(dir.path() / "x"));
  EXPECT_TRUE(back.same_links(a3));
  EXPECT_FALSE(back.affiliations());
  EXPECT_EQ(back.directedness(), Directedness::Directed);
}

TEST(NetworkFiles, Errors) {
  TempDir dir;
  EXPECT_EQ(code_of([&] { read_network(dir.path() / "missing"); }), Errc::IoError);
  {
    std::ofstream(edges_path(dir.path() / "bad")) << "# affnet network\n# format_version\t9\n";
    std::ofstream(affiliations_path(dir.path() / "bad")) << "";
  }
  EXPECT_EQ(code_of([&] { read_network(dir.path() / "bad"); }), Errc::ParseError);

  const std::vector<LayerLink> links = {{NodeId{0}, NodeId{1}, LayerId{0}}};
  const auto tabbed = build_rank3(2, 1, Directedness::Undirected, links,
                                  NetworkLabels{LabelTable({"a\tb", "c"}), LabelTable({"L"})});
  EXPECT_EQ(code_of([&] { write_network(tabbed, dir.path() / "t"); }), Errc::InvalidArgument);
}

TEST(Affiliations, ReadAgainstLabels) {
  TempDir dir;
  const auto f = affnet::testing::toy_network();
  const fs::path p = dir.path() / "aff.tsv";
  std::ofstream(p) << "node\taffiliation\nD\t1\nG\t2\nA\t\n";
  const AffiliationMap m = read_affiliations(p, f.rank3.node_labels(), f.rank3.layer_labels());
  EXPECT_EQ(m[affnet::testing::ToyNetwork::D], affnet::testing::ToyNetwork::L1);
  EXPECT_EQ(m[affnet::testing::ToyNetwork::G], affnet::testing::ToyNetwork::L2);
  EXPECT_FALSE(m[affnet::testing::ToyNetwork::A]);
  std::ofstream(p) << "Z\t1\n";
  EXPECT_EQ(code_of([&] { read_affiliations(p, f.rank3.node_labels(), f.rank3.layer_labels()); }),
            Errc::ParseError);
}

TEST(Ingest, BathScaleInputIsFast) {
  // 2,187 authors in 17 departments with 6,578 distinct co-authorships.
  SplitMix64 rng(2187);
  std::ostringstream affs, edges;
  for (int i = 0; i < 2187; ++i) affs << "author" << i << '\t' << "dept" << rng.below(17) << '\n';
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (seen.size() < 6578) {
    auto a = rng.below(2187), b = rng.below(2187);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) edges << "author" << a << "\tauthor" << b << '\n';
  }
  const auto start = std::chrono::steady_clock::now();
  const auto r = ingest_text(edges.str(), affs.str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.rank4.n_nodes(), 2187u);
  EXPECT_EQ(r.rank4.links().size(), 6578u);
  EXPECT_EQ(r.rank4.n_layers(), 17u);
  EXPECT_LT(secs, 5.0);
}
