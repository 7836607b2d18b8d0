#pragma once

// Single-affiliation multilayer networks in their two tensor forms.
//
// A Rank4Network stores links (i, j, alpha, beta): node i in layer alpha is
// adjacent to node j in layer beta. A Rank3Network stores one N x N
// adjacency per layer; an inter-affiliation link appears in both endpoint
// layers and an intra-affiliation link in exactly one. Both forms expose
// "slices", the N x N blocks the metrics operate on: one per layer for
// rank-3 and one per ordered layer pair for rank-4.
//
// All elements are presence-only (0/1), self-loops are rejected and
// networks are immutable once built.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "affnet/error.hpp"

namespace affnet {

enum class NodeId : std::uint32_t {};
enum class LayerId : std::uint32_t {};

constexpr std::uint32_t index(NodeId n) noexcept { return static_cast<std::uint32_t>(n); }
constexpr std::uint32_t index(LayerId l) noexcept { return static_cast<std::uint32_t>(l); }

enum class Directedness { Undirected, Directed };

std::string_view to_string(Directedness d) noexcept;

/// Bijective mapping between external UTF-8 labels and dense indices.
class LabelTable {
 public:
  LabelTable() = default;
  explicit LabelTable(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "n-1".
  static LabelTable numbered(std::size_t n);

  /// Returns the index of `label`, appending it if new.
  std::uint32_t intern(std::string_view label);
  std::optional<std::uint32_t> find(std::string_view label) const;
  const std::string& label(std::uint32_t id) const;

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  friend bool operator==(const LabelTable& a, const LabelTable& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct NetworkLabels {
  LabelTable nodes;
  LabelTable layers;
};

/// Node -> layer assignment. Entries may be indeterminate only when the map
/// was produced by affiliation inference.
class AffiliationMap {
 public:
  AffiliationMap() = default;
  explicit AffiliationMap(std::size_t n_nodes) : layers_(n_nodes) {}
  explicit AffiliationMap(std::vector<std::optional<LayerId>> layers) : layers_(std::move(layers)) {}

  static AffiliationMap from_layers(std::span<const LayerId> layers);

  std::size_t size() const noexcept { return layers_.size(); }
  std::optional<LayerId> operator[](NodeId n) const { return layers_.at(index(n)); }
  bool is_determinate(NodeId n) const { return layers_.at(index(n)).has_value(); }
  bool is_total() const noexcept;

  void assign(NodeId n, LayerId layer) { layers_.at(index(n)) = layer; }
  void clear(NodeId n) { layers_.at(index(n)).reset(); }

  std::vector<NodeId> indeterminate_nodes() const;
  /// Nodes assigned to `layer`, in ascending id order.
  std::vector<NodeId> members(LayerId layer) const;

  friend bool operator==(const AffiliationMap&, const AffiliationMap&) = default;

 private:
  std::vector<std::optional<LayerId>> layers_;
};

struct Link4 {
  NodeId source;
  NodeId target;
  LayerId source_layer;
  LayerId target_layer;

  friend auto operator<=>(const Link4&, const Link4&) = default;
};

/// One element of a rank-3 layer: (source, target) present in `layer`.
struct LayerLink {
  NodeId source;
  NodeId target;
  LayerId layer;

  friend auto operator<=>(const LayerLink&, const LayerLink&) = default;
};

/// An N x N block of a network: a layer of a rank-3 network or an ordered
/// layer pair of a rank-4 network.
class Slice {
 public:
  static constexpr Slice layer(LayerId a) noexcept { return Slice(a, a, false); }
  static constexpr Slice layer_pair(LayerId a, LayerId b) noexcept { return Slice(a, b, true); }

  constexpr bool is_layer_pair() const noexcept { return pair_; }
  /// Layer of the row nodes: alpha for both (alpha) and (alpha, beta).
  constexpr LayerId source_layer() const noexcept { return source_; }
  constexpr LayerId target_layer() const noexcept { return target_; }

  friend constexpr bool operator==(const Slice&, const Slice&) = default;

 private:
  constexpr Slice(LayerId a, LayerId b, bool pair) noexcept : source_(a), target_(b), pair_(pair) {}

  LayerId source_;
  LayerId target_;
  bool pair_;
};

std::string to_string(const Slice& s, const LabelTable& layer_labels);

/// Sparse 0/1 N x N matrix held as a sorted list of (row, col) entries.
class SparseAdjacency {
 public:
  struct Entry {
    NodeId row;
    NodeId col;

    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  SparseAdjacency() = default;
  /// Sorts and deduplicates `entries`.
  SparseAdjacency(std::size_t n_nodes, std::vector<Entry> entries);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_entries() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::span<const Entry> row(NodeId i) const;
  bool contains(NodeId i, NodeId j) const;

  std::vector<std::uint32_t> row_counts() const;
  std::vector<std::uint32_t> col_counts() const;

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Entry> entries_;
};

/// Layers holding a node pair in a rank-3 network (one or two).
struct PairLayers {
  std::array<LayerId, 2> layers{};
  std::uint8_t count = 0;

  std::span<const LayerId> view() const noexcept { return {layers.data(), count}; }
  bool contains(LayerId l) const noexcept;
};

class Rank4Network {
 public:
  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_layers() const noexcept { return n_layers_; }
  Directedness directedness() const noexcept { return directedness_; }

  /// Canonical link set. Undirected links are stored with source < target;
  /// the mirrored link is answered by has_link.
  std::span<const Link4> links() const noexcept { return links_; }
  bool has_link(NodeId i, NodeId j, LayerId alpha, LayerId beta) const;

  const AffiliationMap& affiliations() const noexcept { return affiliations_; }
  const LabelTable& node_labels() const noexcept { return labels_.nodes; }
  const LabelTable& layer_labels() const noexcept { return labels_.layers; }

  /// All M^2 slices in row-major (alpha, beta) order.
  std::span<const Slice> slices() const noexcept { return slices_; }
  std::size_t slice_position(const Slice& s) const;
  const SparseAdjacency& slice_view(const Slice& s) const;
  std::span<const SparseAdjacency> slice_adjacency() const noexcept { return blocks_; }

  /// Builds a network whose affiliation map may leave isolated or otherwise
  /// unresolved nodes indeterminate. Consistency is checked for every link
  /// whose endpoints are assigned. build_rank4 is the strict entry point.
  static Rank4Network from_links(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                                 std::span<const Link4> links, AffiliationMap affiliations,
                                 NetworkLabels labels = {});

  /// Same size, directedness and link set. Affiliations and labels are not
  /// compared.
  bool same_links(const Rank4Network& other) const noexcept;

 private:
  Rank4Network() = default;

  std::size_t n_nodes_ = 0;
  std::size_t n_layers_ = 0;
  Directedness directedness_ = Directedness::Undirected;
  std::vector<Link4> links_;
  AffiliationMap affiliations_;
  NetworkLabels labels_;
  std::vector<Slice> slices_;
  std::vector<SparseAdjacency> blocks_;
};

class Rank3Network {
 public:
  struct PairEntry {
    NodeId source;
    NodeId target;
    PairLayers layers;
  };

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_layers() const noexcept { return n_layers_; }
  Directedness directedness() const noexcept { return directedness_; }

  /// One entry per (pair, layer) appearance, canonical and sorted.
  std::span<const LayerLink> links() const noexcept { return links_; }
  /// Distinct node pairs with the layers they appear in, sorted by pair.
  std::span<const PairEntry> pairs() const noexcept { return pairs_; }
  bool has_link(NodeId i, NodeId j, LayerId layer) const;
  /// Layers containing the pair; empty when absent.
  PairLayers layers_of(NodeId i, NodeId j) const;

  const std::optional<AffiliationMap>& affiliations() const noexcept { return affiliations_; }
  const LabelTable& node_labels() const noexcept { return labels_.nodes; }
  const LabelTable& layer_labels() const noexcept { return labels_.layers; }

  /// All M slices in layer order.
  std::span<const Slice> slices() const noexcept { return slices_; }
  std::size_t slice_position(const Slice& s) const;
  const SparseAdjacency& slice_view(const Slice& s) const;
  std::span<const SparseAdjacency> slice_adjacency() const noexcept { return layers_; }

  /// Copy with `affiliations` attached after a consistency check.
  Rank3Network with_affiliations(AffiliationMap affiliations) const;

  bool same_links(const Rank3Network& other) const noexcept;

 private:
  friend Rank3Network build_rank3(std::size_t, std::size_t, Directedness, std::span<const LayerLink>,
                                  NetworkLabels, std::optional<AffiliationMap>);

  Rank3Network() = default;
  std::uint64_t pair_key(NodeId i, NodeId j) const noexcept;

  std::size_t n_nodes_ = 0;
  std::size_t n_layers_ = 0;
  Directedness directedness_ = Directedness::Undirected;
  std::vector<LayerLink> links_;
  std::vector<PairEntry> pairs_;
  std::unordered_map<std::uint64_t, std::uint32_t> pair_index_;
  std::optional<AffiliationMap> affiliations_;
  NetworkLabels labels_;
  std::vector<Slice> slices_;
  std::vector<SparseAdjacency> layers_;
};

/// Builds a rank-4 network. `affiliations` must be total and every link
/// (i, j, alpha, beta) must satisfy alpha = aff(i), beta = aff(j).
///
/// Throws IndexOutOfRange, SelfLoop, AffiliationViolation.
Rank4Network build_rank4(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                         std::span<const Link4> links, AffiliationMap affiliations,
                         NetworkLabels labels = {});

/// Builds a rank-3 network from per-layer links. A node pair may appear in at
/// most two layers. An attached affiliation map is checked for consistency.
///
/// Throws IndexOutOfRange, SelfLoop, OverlapViolation, AffiliationViolation.
Rank3Network build_rank3(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                         std::span<const LayerLink> links, NetworkLabels labels = {},
                         std::optional<AffiliationMap> affiliations = std::nullopt);

/// Slices in enumeration order: M for rank-3, M^2 row-major for rank-4.
std::vector<Slice> enumerate_slices(const Rank3Network& net);
std::vector<Slice> enumerate_slices(const Rank4Network& net);

}  // namespace affnet
