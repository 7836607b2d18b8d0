#pragma once

// Dataset ingestion and the on-disk network format.
//
// Raw datasets are two delimited text files: an edge list of
// (source_label, target_label) rows and an affiliation list of
// (node_label, affiliation_label) rows. The delimiter (tab or comma) is
// detected from the first data line; blank lines and lines starting with '#'
// are skipped, and a header row is recognised by its column names.
//
// Networks are saved as `<stem>.edges.tsv` plus `<stem>.affiliations.tsv`.
// The edge file opens with '#'-prefixed metadata (format version, rank,
// directedness, N, M, layer labels) followed by one row per link, four label
// columns for rank-4 and three for rank-3. The affiliation sidecar lists every
// node in id order with its layer label, empty when indeterminate. Both files
// remain valid raw-dataset inputs.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "affnet/core_model.hpp"

namespace affnet {

inline constexpr int kNetworkFormatVersion = 1;

enum class HeaderMode { Auto, Present, Absent };

struct IngestOptions {
  Directedness directedness = Directedness::Undirected;
  /// Strict: unaffiliated endpoints and self-loops are errors. Lenient: such
  /// rows are dropped and counted.
  bool strict = true;
  HeaderMode header = HeaderMode::Auto;
};

struct IngestStats {
  std::size_t edge_rows = 0;
  std::size_t duplicate_rows = 0;
  std::size_t self_loops_skipped = 0;
  std::size_t rows_missing_affiliation = 0;
  /// Rows in the affiliation file; every such node becomes a network node.
  std::size_t affiliated_nodes = 0;
  /// Distinct labels seen on kept edge rows.
  std::size_t nodes_on_edges = 0;
  /// Distinct edge labels with no affiliation row (lenient mode drops them).
  std::size_t unaffiliated_labels = 0;
  std::size_t links = 0;
  std::size_t affiliations = 0;
};

struct IngestResult {
  Rank4Network rank4;
  Rank3Network rank3;
  AffiliationMap affiliations;
  IngestStats stats;
  std::vector<std::string> warnings;
};

/// Builds both representations from raw files. Node ids follow first
/// appearance in the affiliation file, as do layer ids.
///
/// Throws ParseError (with the line number), MissingAffiliation and SelfLoop
/// (strict mode), IoError for unreadable files.
IngestResult ingest(std::istream& edges, std::istream& affiliations, const IngestOptions& options = {});
IngestResult ingest_files(const std::filesystem::path& edges, const std::filesystem::path& affiliations,
                          const IngestOptions& options = {});

std::filesystem::path edges_path(const std::filesystem::path& stem);
std::filesystem::path affiliations_path(const std::filesystem::path& stem);

void write_network(const Rank4Network& net, const std::filesystem::path& stem);
void write_network(const Rank3Network& net, const std::filesystem::path& stem);

using StoredNetwork = std::variant<Rank3Network, Rank4Network>;

/// Reads a network written by write_network. The sidecar supplies node labels
/// and ids; a rank-3 sidecar with no affiliations attaches no map.
StoredNetwork read_network(const std::filesystem::path& stem);

/// Reads an affiliation file against an existing node/layer labelling. Labels
/// unknown to the network are errors; nodes absent from the file, or with an
/// empty affiliation field, are left indeterminate.
AffiliationMap read_affiliations(const std::filesystem::path& path, const LabelTable& nodes,
                                 const LabelTable& layers);
void write_affiliations(const AffiliationMap& aff, const LabelTable& nodes, const LabelTable& layers,
                        const std::filesystem::path& path);

}  // namespace affnet
