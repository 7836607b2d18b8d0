#pragma once

// Slice metrics shared by both representations: per-slice degree, node
// activity across slices, and activity overlap between slices (slice-pair
// closeness and its per-slice mean, the slice closeness centrality).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "affnet/core_model.hpp"
#include "affnet/stats.hpp"

namespace affnet {

enum class Representation { Rank3, Rank4 };

std::string_view to_string(Representation r) noexcept;

/// Non-owning, uniform view over the slices of either network form. Converts
/// implicitly from both, so every metric accepts either.
class SlicedView {
 public:
  SlicedView(const Rank3Network& net) noexcept;  // NOLINT(google-explicit-constructor)
  SlicedView(const Rank4Network& net) noexcept;  // NOLINT(google-explicit-constructor)

  Representation representation() const noexcept { return representation_; }
  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_layers() const noexcept { return n_layers_; }
  Directedness directedness() const noexcept { return directedness_; }
  std::span<const Slice> slices() const noexcept { return slices_; }
  /// M for rank-3, M^2 for rank-4.
  std::size_t m_bar() const noexcept { return slices_.size(); }
  /// Throws InvalidSlice for a slice of the other form or out of range.
  std::size_t position(const Slice& s) const;
  const SparseAdjacency& adjacency(std::size_t position) const { return blocks_[position]; }
  /// Null when a rank-3 network carries no affiliation map.
  const AffiliationMap* affiliations() const noexcept { return affiliations_; }
  const LabelTable& layer_labels() const noexcept { return *layer_labels_; }

 private:
  Representation representation_;
  std::size_t n_nodes_;
  std::size_t n_layers_;
  Directedness directedness_;
  std::span<const Slice> slices_;
  std::span<const SparseAdjacency> blocks_;
  const AffiliationMap* affiliations_;
  const LabelTable* layer_labels_;
};

/// Directed slices count out-links by default.
enum class DegreeMode { Out, In };

struct DegreeVector {
  Slice slice = Slice::layer(LayerId{0});
  /// Link count of each node in the slice; undirected neighbours count once.
  std::vector<std::uint32_t> raw;
  /// raw / N.
  std::vector<double> normalized;
  /// Nodes affiliated with the slice's source layer, when affiliations are
  /// known. These are the nodes whose rows the slice is about.
  std::optional<std::vector<NodeId>> members;

  DegreeVector() = default;
  /// Bare degree list with no slice context; normalized by its length.
  explicit DegreeVector(std::vector<std::uint32_t> degrees);
};

DegreeVector slice_degrees(const SlicedView& net, const Slice& slice, DegreeMode mode = DegreeMode::Out);

/// Which nodes a degree distribution is taken over.
enum class Population {
  /// The slice's member nodes when known, otherwise every node.
  Members,
  AllNodes,
};

struct DistributionOptions {
  bool include_zeros = false;
  Population population = Population::Members;
};

/// Defaults for the two fitted models: power laws cannot take k = 0.
inline constexpr DistributionOptions kPowerLawSample{false, Population::Members};
inline constexpr DistributionOptions kBinomialSample{true, Population::Members};

struct DegreeBin {
  std::uint32_t k;
  std::size_t count;
  double probability;
};

struct DegreeDistribution {
  /// Ascending by k, one bin per observed value.
  std::vector<DegreeBin> bins;
  std::size_t sample_size = 0;

  std::vector<PmfPoint> pmf() const;
  double mean() const noexcept;
  std::size_t distinct_values() const noexcept { return bins.size(); }
};

DegreeDistribution degree_distribution(const DegreeVector& degrees, DistributionOptions options = {});

/// N x |slices| activity indicators, packed one bit vector per slice.
class ActivityMatrix {
 public:
  ActivityMatrix(std::size_t n_nodes, std::size_t n_slices);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_slices() const noexcept { return n_slices_; }
  std::size_t m_bar() const noexcept { return n_slices_; }
  std::size_t words_per_slice() const noexcept { return words_; }

  bool active(NodeId i, std::size_t slice_position) const;
  void set_active(NodeId i, std::size_t slice_position);
  std::span<const std::uint64_t> slice_bits(std::size_t slice_position) const;
  std::uint64_t active_count(std::size_t slice_position) const;
  /// Number of slices node i is active in.
  std::uint32_t node_count(NodeId i) const;

 private:
  std::size_t n_nodes_;
  std::size_t n_slices_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// b(i, slice) = 1 iff node i has a link in the slice.
ActivityMatrix activity_matrix(const SlicedView& net, DegreeMode mode = DegreeMode::Out);

/// B_i = (slices where i is active) / M-bar; one value per node.
std::vector<double> node_activity(const SlicedView& net, DegreeMode mode = DegreeMode::Out);
std::vector<double> node_activity(const ActivityMatrix& activity);

/// Symmetric |slices| x |slices| table of Q values.
class ClosenessTable {
 public:
  ClosenessTable() = default;
  ClosenessTable(std::size_t n_slices, std::vector<double> values);

  std::size_t n_slices() const noexcept { return n_; }
  double at(std::size_t x, std::size_t y) const { return q_.at(x * n_ + y); }
  std::span<const double> values() const noexcept { return q_; }
  /// Row means: the closeness centrality of every slice.
  std::vector<double> centralities() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> q_;
};

/// Q(x, y) = (nodes active in both slices) / N.
double slice_pair_closeness(const SlicedView& net, const Slice& x, const Slice& y);
ClosenessTable closeness_table(const SlicedView& net);
ClosenessTable closeness_table(const ActivityMatrix& activity);

/// Mean of Q(x, y) over every slice y of the representation.
double slice_closeness_centrality(const SlicedView& net, const Slice& x);

}  // namespace affnet
