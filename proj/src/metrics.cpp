#include "affnet/metrics.hpp"

#include <algorithm>
#include <map>

#include "affnet/kernels/bitset.hpp"

namespace affnet {

std::string_view to_string(Representation r) noexcept { return r == Representation::Rank3 ? "rank3" : "rank4"; }

SlicedView::SlicedView(const Rank3Network& net) noexcept
    : representation_(Representation::Rank3),
      n_nodes_(net.n_nodes()),
      n_layers_(net.n_layers()),
      directedness_(net.directedness()),
      slices_(net.slices()),
      blocks_(net.slice_adjacency()),
      affiliations_(net.affiliations() ? &*net.affiliations() : nullptr),
      layer_labels_(&net.layer_labels()) {}

SlicedView::SlicedView(const Rank4Network& net) noexcept
    : representation_(Representation::Rank4),
      n_nodes_(net.n_nodes()),
      n_layers_(net.n_layers()),
      directedness_(net.directedness()),
      slices_(net.slices()),
      blocks_(net.slice_adjacency()),
      affiliations_(&net.affiliations()),
      layer_labels_(&net.layer_labels()) {}

std::size_t SlicedView::position(const Slice& s) const {
  const bool want_pair = representation_ == Representation::Rank4;
  if (s.is_layer_pair() != want_pair || index(s.source_layer()) >= n_layers_ ||
      index(s.target_layer()) >= n_layers_)
    throw Error(Errc::InvalidSlice, "slice does not belong to this network");
  return want_pair ? index(s.source_layer()) * n_layers_ + index(s.target_layer()) : index(s.source_layer());
}

// ---------------------------------------------------------------------------
// Degrees

DegreeVector::DegreeVector(std::vector<std::uint32_t> degrees) : raw(std::move(degrees)) {
  normalized.reserve(raw.size());
  for (auto k : raw) normalized.push_back(static_cast<double>(k) / static_cast<double>(raw.size()));
}

DegreeVector slice_degrees(const SlicedView& net, const Slice& slice, DegreeMode mode) {
  const SparseAdjacency& adj = net.adjacency(net.position(slice));
  DegreeVector dv;
  dv.slice = slice;
  dv.raw = (mode == DegreeMode::In && net.directedness() == Directedness::Directed) ? adj.col_counts()
                                                                                    : adj.row_counts();
  const double n = static_cast<double>(net.n_nodes());
  dv.normalized.reserve(dv.raw.size());
  for (auto k : dv.raw) dv.normalized.push_back(static_cast<double>(k) / n);
  if (const AffiliationMap* aff = net.affiliations()) dv.members = aff->members(slice.source_layer());
  return dv;
}

std::vector<PmfPoint> DegreeDistribution::pmf() const {
  std::vector<PmfPoint> out;
  out.reserve(bins.size());
  for (const auto& b : bins) out.push_back({static_cast<double>(b.k), b.probability});
  return out;
}

double DegreeDistribution::mean() const noexcept {
  if (sample_size == 0) return 0.0;
  double s = 0.0;
  for (const auto& b : bins) s += static_cast<double>(b.k) * static_cast<double>(b.count);
  return s / static_cast<double>(sample_size);
}

DegreeDistribution degree_distribution(const DegreeVector& degrees, DistributionOptions options) {
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t sample = 0;
  auto take = [&](std::uint32_t k) {
    if (k == 0 && !options.include_zeros) return;
    ++counts[k];
    ++sample;
  };
  if (options.population == Population::Members && degrees.members) {
    for (NodeId i : *degrees.members) take(degrees.raw.at(index(i)));
  } else {
    for (auto k : degrees.raw) take(k);
  }
  DegreeDistribution dist;
  dist.sample_size = sample;
  dist.bins.reserve(counts.size());
  for (auto [k, c] : counts)
    dist.bins.push_back({k, c, static_cast<double>(c) / static_cast<double>(sample)});
  return dist;
}

// ---------------------------------------------------------------------------
// Activity

ActivityMatrix::ActivityMatrix(std::size_t n_nodes, std::size_t n_slices)
    : n_nodes_(n_nodes), n_slices_(n_slices), words_((n_nodes + 63) / 64), bits_(words_ * n_slices, 0) {}

bool ActivityMatrix::active(NodeId i, std::size_t slice_position) const {
  const auto idx = index(i);
  return (bits_.at(slice_position * words_ + idx / 64) >> (idx % 64)) & 1u;
}

void ActivityMatrix::set_active(NodeId i, std::size_t slice_position) {
  const auto idx = index(i);
  bits_.at(slice_position * words_ + idx / 64) |= std::uint64_t{1} << (idx % 64);
}

std::span<const std::uint64_t> ActivityMatrix::slice_bits(std::size_t slice_position) const {
  return std::span<const std::uint64_t>(bits_).subspan(slice_position * words_, words_);
}

std::uint64_t ActivityMatrix::active_count(std::size_t slice_position) const {
  return kernels::popcount(slice_bits(slice_position));
}

std::uint32_t ActivityMatrix::node_count(NodeId i) const {
  std::uint32_t c = 0;
  for (std::size_t s = 0; s < n_slices_; ++s) c += active(i, s) ? 1u : 0u;
  return c;
}

ActivityMatrix activity_matrix(const SlicedView& net, DegreeMode mode) {
  ActivityMatrix act(net.n_nodes(), net.m_bar());
  const bool by_col = mode == DegreeMode::In && net.directedness() == Directedness::Directed;
  for (std::size_t s = 0; s < net.m_bar(); ++s)
    for (const auto& e : net.adjacency(s).entries()) act.set_active(by_col ? e.col : e.row, s);
  return act;
}

std::vector<double> node_activity(const ActivityMatrix& activity) {
  std::vector<double> b(activity.n_nodes(), 0.0);
  if (activity.m_bar() == 0) return b;
  const double m_bar = static_cast<double>(activity.m_bar());
  for (std::uint32_t i = 0; i < activity.n_nodes(); ++i)
    b[i] = static_cast<double>(activity.node_count(NodeId{i})) / m_bar;
  return b;
}

std::vector<double> node_activity(const SlicedView& net, DegreeMode mode) {
  return node_activity(activity_matrix(net, mode));
}

// ---------------------------------------------------------------------------
// Closeness

ClosenessTable::ClosenessTable(std::size_t n_slices, std::vector<double> values)
    : n_(n_slices), q_(std::move(values)) {
  if (q_.size() != n_ * n_) throw Error(Errc::InvalidArgument, "closeness table size mismatch");
}

std::vector<double> ClosenessTable::centralities() const {
  std::vector<double> c(n_, 0.0);
  for (std::size_t x = 0; x < n_; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < n_; ++y) s += q_[x * n_ + y];
    c[x] = s / static_cast<double>(n_);
  }
  return c;
}

ClosenessTable closeness_table(const ActivityMatrix& activity) {
  const std::size_t s = activity.n_slices();
  std::vector<double> q(s * s, 0.0);
  if (activity.n_nodes() > 0) {
    const double n = static_cast<double>(activity.n_nodes());
    for (std::size_t x = 0; x < s; ++x) {
      for (std::size_t y = x; y < s; ++y) {
        const double v =
            static_cast<double>(kernels::and_popcount(activity.slice_bits(x), activity.slice_bits(y))) / n;
        q[x * s + y] = v;
        q[y * s + x] = v;
      }
    }
  }
  return ClosenessTable(s, std::move(q));
}

ClosenessTable closeness_table(const SlicedView& net) { return closeness_table(activity_matrix(net)); }

double slice_pair_closeness(const SlicedView& net, const Slice& x, const Slice& y) {
  const std::size_t px = net.position(x);
  const std::size_t py = net.position(y);
  if (net.n_nodes() == 0) return 0.0;
  ActivityMatrix act(net.n_nodes(), 2);
  for (const auto& e : net.adjacency(px).entries()) act.set_active(e.row, 0);
  for (const auto& e : net.adjacency(py).entries()) act.set_active(e.row, 1);
  return static_cast<double>(kernels::and_popcount(act.slice_bits(0), act.slice_bits(1))) /
         static_cast<double>(net.n_nodes());
}

double slice_closeness_centrality(const SlicedView& net, const Slice& x) {
  const std::size_t px = net.position(x);
  if (net.n_nodes() == 0 || net.m_bar() == 0) return 0.0;
  const ActivityMatrix act = activity_matrix(net);
  const double n = static_cast<double>(net.n_nodes());
  double s = 0.0;
  for (std::size_t y = 0; y < net.m_bar(); ++y)
    s += static_cast<double>(kernels::and_popcount(act.slice_bits(px), act.slice_bits(y))) / n;
  return s / static_cast<double>(net.m_bar());
}

}  // namespace affnet
