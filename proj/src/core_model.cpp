#include "affnet/core_model.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include <fmt/format.h>

namespace affnet {

std::string_view to_string(Directedness d) noexcept {
  return d == Directedness::Directed ? "directed" : "undirected";
}

// ---------------------------------------------------------------------------
// LabelTable

LabelTable::LabelTable(std::vector<std::string> labels) {
  labels_.reserve(labels.size());
  for (auto& l : labels) {
    if (l.empty()) throw Error(Errc::InvalidArgument, "empty label");
    if (find(l)) throw Error(Errc::InvalidArgument, fmt::format("duplicate label '{}'", l));
    intern(l);
  }
}

LabelTable LabelTable::numbered(std::size_t n) {
  LabelTable t;
  t.labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.intern(std::to_string(i));
  return t;
}

std::uint32_t LabelTable::intern(std::string_view label) {
  std::string key(label);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<std::uint32_t> LabelTable::find(std::string_view label) const {
  if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::string& LabelTable::label(std::uint32_t id) const {
  if (id >= labels_.size()) throw Error(Errc::IndexOutOfRange, fmt::format("label id {} >= {}", id, labels_.size()));
  return labels_[id];
}

// ---------------------------------------------------------------------------
// AffiliationMap

AffiliationMap AffiliationMap::from_layers(std::span<const LayerId> layers) {
  std::vector<std::optional<LayerId>> v(layers.begin(), layers.end());
  return AffiliationMap(std::move(v));
}

bool AffiliationMap::is_total() const noexcept {
  return std::all_of(layers_.begin(), layers_.end(), [](const auto& l) { return l.has_value(); });
}

std::vector<NodeId> AffiliationMap::indeterminate_nodes() const {
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < layers_.size(); ++i)
    if (!layers_[i]) out.push_back(NodeId{i});
  return out;
}

std::vector<NodeId> AffiliationMap::members(LayerId layer) const {
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < layers_.size(); ++i)
    if (layers_[i] == layer) out.push_back(NodeId{i});
  return out;
}

// ---------------------------------------------------------------------------
// Slice

std::string to_string(const Slice& s, const LabelTable& layer_labels) {
  auto name = [&](LayerId l) {
    return index(l) < layer_labels.size() ? layer_labels.label(index(l)) : std::to_string(index(l));
  };
  if (!s.is_layer_pair()) return name(s.source_layer());
  return name(s.source_layer()) + "/" + name(s.target_layer());
}

// ---------------------------------------------------------------------------
// SparseAdjacency

SparseAdjacency::SparseAdjacency(std::size_t n_nodes, std::vector<Entry> entries)
    : n_nodes_(n_nodes), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

std::span<const SparseAdjacency::Entry> SparseAdjacency::row(NodeId i) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, NodeId{0}});
  auto hi = std::find_if(lo, entries_.end(), [i](const Entry& e) { return e.row != i; });
  return {lo, hi};
}

bool SparseAdjacency::contains(NodeId i, NodeId j) const {
  return std::binary_search(entries_.begin(), entries_.end(), Entry{i, j});
}

std::vector<std::uint32_t> SparseAdjacency::row_counts() const {
  std::vector<std::uint32_t> counts(n_nodes_, 0);
  for (const auto& e : entries_) ++counts[index(e.row)];
  return counts;
}

std::vector<std::uint32_t> SparseAdjacency::col_counts() const {
  std::vector<std::uint32_t> counts(n_nodes_, 0);
  for (const auto& e : entries_) ++counts[index(e.col)];
  return counts;
}

bool PairLayers::contains(LayerId l) const noexcept {
  for (std::uint8_t k = 0; k < count; ++k)
    if (layers[k] == l) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

NetworkLabels resolve_labels(NetworkLabels labels, std::size_t n_nodes, std::size_t n_layers) {
  if (labels.nodes.empty()) labels.nodes = LabelTable::numbered(n_nodes);
  if (labels.layers.empty()) labels.layers = LabelTable::numbered(n_layers);
  if (labels.nodes.size() != n_nodes)
    throw Error(Errc::InvalidArgument,
                fmt::format("node label table has {} entries for {} nodes", labels.nodes.size(), n_nodes));
  if (labels.layers.size() != n_layers)
    throw Error(Errc::InvalidArgument,
                fmt::format("layer label table has {} entries for {} layers", labels.layers.size(), n_layers));
  return labels;
}

void check_node(NodeId n, std::size_t n_nodes) {
  if (index(n) >= n_nodes)
    throw Error(Errc::IndexOutOfRange, fmt::format("node {} out of range [0, {})", index(n), n_nodes));
}

void check_layer(LayerId l, std::size_t n_layers) {
  if (index(l) >= n_layers)
    throw Error(Errc::IndexOutOfRange, fmt::format("layer {} out of range [0, {})", index(l), n_layers));
}

void check_affiliation_size(const AffiliationMap& aff, std::size_t n_nodes) {
  if (aff.size() != n_nodes)
    throw Error(Errc::InvalidArgument,
                fmt::format("affiliation map has {} entries for {} nodes", aff.size(), n_nodes));
}

void check_affiliation_layers(const AffiliationMap& aff, std::size_t n_layers) {
  for (std::uint32_t i = 0; i < aff.size(); ++i)
    if (auto l = aff[NodeId{i}]) check_layer(*l, n_layers);
}

// Records `layer` as the implied affiliation of `n`, rejecting a second,
// different one.
void imply(AffiliationMap& aff, NodeId n, LayerId layer) {
  auto current = aff[n];
  if (!current) {
    aff.assign(n, layer);
  } else if (*current != layer) {
    throw Error(Errc::AffiliationViolation,
                fmt::format("node {} linked from layer {} but affiliated with layer {}", index(n),
                            index(layer), index(*current)));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Rank4Network

Rank4Network Rank4Network::from_links(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                                      std::span<const Link4> links, AffiliationMap affiliations,
                                      NetworkLabels labels) {
  check_affiliation_size(affiliations, n_nodes);
  check_affiliation_layers(affiliations, n_layers);

  Rank4Network net;
  net.n_nodes_ = n_nodes;
  net.n_layers_ = n_layers;
  net.directedness_ = d;
  net.labels_ = resolve_labels(std::move(labels), n_nodes, n_layers);

  net.links_.reserve(links.size());
  for (Link4 l : links) {
    check_node(l.source, n_nodes);
    check_node(l.target, n_nodes);
    check_layer(l.source_layer, n_layers);
    check_layer(l.target_layer, n_layers);
    if (l.source == l.target)
      throw Error(Errc::SelfLoop, fmt::format("self-loop on node {}", index(l.source)));
    imply(affiliations, l.source, l.source_layer);
    imply(affiliations, l.target, l.target_layer);
    if (d == Directedness::Undirected && index(l.source) > index(l.target))
      l = Link4{l.target, l.source, l.target_layer, l.source_layer};
    net.links_.push_back(l);
  }
  std::sort(net.links_.begin(), net.links_.end());
  net.links_.erase(std::unique(net.links_.begin(), net.links_.end()), net.links_.end());
  net.affiliations_ = std::move(affiliations);

  std::vector<std::vector<SparseAdjacency::Entry>> blocks(n_layers * n_layers);
  for (const Link4& l : net.links_) {
    blocks[index(l.source_layer) * n_layers + index(l.target_layer)].push_back({l.source, l.target});
    if (d == Directedness::Undirected)
      blocks[index(l.target_layer) * n_layers + index(l.source_layer)].push_back({l.target, l.source});
  }
  net.blocks_.reserve(blocks.size());
  for (auto& b : blocks) net.blocks_.emplace_back(n_nodes, std::move(b));

  net.slices_.reserve(n_layers * n_layers);
  for (std::uint32_t a = 0; a < n_layers; ++a)
    for (std::uint32_t b = 0; b < n_layers; ++b) net.slices_.push_back(Slice::layer_pair(LayerId{a}, LayerId{b}));
  return net;
}

Rank4Network build_rank4(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                         std::span<const Link4> links, AffiliationMap affiliations, NetworkLabels labels) {
  check_affiliation_size(affiliations, n_nodes);
  if (!affiliations.is_total())
    throw Error(Errc::InvalidArgument, "rank-4 construction requires a total affiliation map");
  // Validate against the map as given, before any implied assignment.
  for (const Link4& l : links) {
    check_node(l.source, n_nodes);
    check_node(l.target, n_nodes);
    check_layer(l.source_layer, n_layers);
    check_layer(l.target_layer, n_layers);
    if (affiliations[l.source] != l.source_layer || affiliations[l.target] != l.target_layer)
      throw Error(Errc::AffiliationViolation,
                  fmt::format("link ({}, {}, {}, {}) contradicts affiliations ({}, {})", index(l.source),
                              index(l.target), index(l.source_layer), index(l.target_layer),
                              index(*affiliations[l.source]), index(*affiliations[l.target])));
  }
  return Rank4Network::from_links(n_nodes, n_layers, d, links, std::move(affiliations), std::move(labels));
}

bool Rank4Network::has_link(NodeId i, NodeId j, LayerId alpha, LayerId beta) const {
  if (index(i) >= n_nodes_ || index(j) >= n_nodes_ || index(alpha) >= n_layers_ || index(beta) >= n_layers_)
    return false;
  return blocks_[index(alpha) * n_layers_ + index(beta)].contains(i, j);
}

std::size_t Rank4Network::slice_position(const Slice& s) const {
  if (!s.is_layer_pair() || index(s.source_layer()) >= n_layers_ || index(s.target_layer()) >= n_layers_)
    throw Error(Errc::InvalidSlice, "slice is not a layer pair of this rank-4 network");
  return index(s.source_layer()) * n_layers_ + index(s.target_layer());
}

const SparseAdjacency& Rank4Network::slice_view(const Slice& s) const { return blocks_[slice_position(s)]; }

bool Rank4Network::same_links(const Rank4Network& other) const noexcept {
  return n_nodes_ == other.n_nodes_ && n_layers_ == other.n_layers_ && directedness_ == other.directedness_ &&
         links_ == other.links_;
}

// ---------------------------------------------------------------------------
// Rank3Network

std::uint64_t Rank3Network::pair_key(NodeId i, NodeId j) const noexcept {
  std::uint32_t a = index(i), b = index(j);
  if (directedness_ == Directedness::Undirected && a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

Rank3Network build_rank3(std::size_t n_nodes, std::size_t n_layers, Directedness d,
                         std::span<const LayerLink> links, NetworkLabels labels,
                         std::optional<AffiliationMap> affiliations) {
  Rank3Network net;
  net.n_nodes_ = n_nodes;
  net.n_layers_ = n_layers;
  net.directedness_ = d;
  net.labels_ = resolve_labels(std::move(labels), n_nodes, n_layers);

  net.links_.reserve(links.size());
  for (LayerLink l : links) {
    check_node(l.source, n_nodes);
    check_node(l.target, n_nodes);
    check_layer(l.layer, n_layers);
    if (l.source == l.target)
      throw Error(Errc::SelfLoop, fmt::format("self-loop on node {}", index(l.source)));
    if (d == Directedness::Undirected && index(l.source) > index(l.target)) std::swap(l.source, l.target);
    net.links_.push_back(l);
  }
  // Sorted by (source, target, layer) so each pair's appearances are adjacent.
  std::sort(net.links_.begin(), net.links_.end(), [](const LayerLink& a, const LayerLink& b) {
    return std::tie(a.source, a.target, a.layer) < std::tie(b.source, b.target, b.layer);
  });
  net.links_.erase(std::unique(net.links_.begin(), net.links_.end()), net.links_.end());

  for (const LayerLink& l : net.links_) {
    if (!net.pairs_.empty() && net.pairs_.back().source == l.source && net.pairs_.back().target == l.target) {
      auto& p = net.pairs_.back().layers;
      if (p.count == 2)
        throw Error(Errc::OverlapViolation, fmt::format("pair ({}, {}) present in more than two layers",
                                                        index(l.source), index(l.target)));
      p.layers[p.count++] = l.layer;
    } else {
      Rank3Network::PairEntry e{l.source, l.target, {}};
      e.layers.layers[0] = l.layer;
      e.layers.count = 1;
      net.pairs_.push_back(e);
    }
  }
  net.pair_index_.reserve(net.pairs_.size());
  for (std::uint32_t k = 0; k < net.pairs_.size(); ++k)
    net.pair_index_.emplace(net.pair_key(net.pairs_[k].source, net.pairs_[k].target), k);

  std::vector<std::vector<SparseAdjacency::Entry>> layers(n_layers);
  for (const LayerLink& l : net.links_) {
    layers[index(l.layer)].push_back({l.source, l.target});
    if (d == Directedness::Undirected) layers[index(l.layer)].push_back({l.target, l.source});
  }
  net.layers_.reserve(n_layers);
  for (auto& l : layers) net.layers_.emplace_back(n_nodes, std::move(l));

  net.slices_.reserve(n_layers);
  for (std::uint32_t a = 0; a < n_layers; ++a) net.slices_.push_back(Slice::layer(LayerId{a}));

  if (affiliations) return net.with_affiliations(std::move(*affiliations));
  return net;
}

Rank3Network Rank3Network::with_affiliations(AffiliationMap affiliations) const {
  check_affiliation_size(affiliations, n_nodes_);
  check_affiliation_layers(affiliations, n_layers_);
  for (const PairEntry& p : pairs_) {
    auto ai = affiliations[p.source];
    auto aj = affiliations[p.target];
    bool ok = true;
    if (ai && !p.layers.contains(*ai)) ok = false;
    if (aj && !p.layers.contains(*aj)) ok = false;
    if (p.layers.count == 2 && ai && aj && *ai == *aj) ok = false;
    if (!ok)
      throw Error(Errc::AffiliationViolation,
                  fmt::format("pair ({}, {}) layers contradict the affiliation map", index(p.source),
                              index(p.target)));
  }
  Rank3Network copy = *this;
  copy.affiliations_ = std::move(affiliations);
  return copy;
}

bool Rank3Network::has_link(NodeId i, NodeId j, LayerId layer) const {
  return layers_of(i, j).contains(layer);
}

PairLayers Rank3Network::layers_of(NodeId i, NodeId j) const {
  if (auto it = pair_index_.find(pair_key(i, j)); it != pair_index_.end()) return pairs_[it->second].layers;
  return {};
}

std::size_t Rank3Network::slice_position(const Slice& s) const {
  if (s.is_layer_pair() || index(s.source_layer()) >= n_layers_)
    throw Error(Errc::InvalidSlice, "slice is not a layer of this rank-3 network");
  return index(s.source_layer());
}

const SparseAdjacency& Rank3Network::slice_view(const Slice& s) const { return layers_[slice_position(s)]; }

bool Rank3Network::same_links(const Rank3Network& other) const noexcept {
  return n_nodes_ == other.n_nodes_ && n_layers_ == other.n_layers_ && directedness_ == other.directedness_ &&
         links_ == other.links_;
}

std::vector<Slice> enumerate_slices(const Rank3Network& net) {
  auto s = net.slices();
  return {s.begin(), s.end()};
}

std::vector<Slice> enumerate_slices(const Rank4Network& net) {
  auto s = net.slices();
  return {s.begin(), s.end()};
}

}  // namespace affnet
