#pragma once

// Brute-force reference: networks as dense 0/1 tensors and metrics computed
// by direct enumeration over every cell.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "affnet/core_model.hpp"

namespace affnet::testing {

/// One N x N block per slice, slices in the library's enumeration order.
struct DenseTensor {
  std::size_t n = 0;
  std::size_t slices = 0;
  std::vector<std::uint8_t> cells;

  DenseTensor(std::size_t n_nodes, std::size_t n_slices)
      : n(n_nodes), slices(n_slices), cells(n_nodes * n_nodes * n_slices, 0) {}
  std::uint8_t& at(std::size_t s, std::size_t i, std::size_t j) { return cells[(s * n + i) * n + j]; }
  std::uint8_t at(std::size_t s, std::size_t i, std::size_t j) const { return cells[(s * n + i) * n + j]; }
  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;
};

DenseTensor dense(const Rank4Network& net);
DenseTensor dense(const Rank3Network& net);
/// Rank-3 tensor straight from the rank-4 one: cell (i, j, g) is set when
/// some (i, j, a, b) is set with g in {a, b}.
DenseTensor dense_projection(const Rank4Network& net);

std::vector<std::uint32_t> dense_degrees(const DenseTensor& t, std::size_t slice);
std::vector<double> dense_activity(const DenseTensor& t);
/// Row-major slices x slices.
std::vector<double> dense_closeness(const DenseTensor& t);

/// Calls f(net) for every network over `n` nodes and `m` layers: every
/// affiliation assignment crossed with every link set.
template <typename F>
void for_each_network(std::size_t n, std::size_t m, Directedness d, F&& f) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j && (d == Directedness::Directed || i < j)) pairs.emplace_back(i, j);
  std::size_t assignments = 1;
  for (std::size_t k = 0; k < n; ++k) assignments *= m;
  std::vector<LayerId> layers(n);
  std::vector<Link4> links;
  for (std::size_t a = 0; a < assignments; ++a) {
    std::size_t code = a;
    for (auto& l : layers) {
      l = LayerId{static_cast<std::uint32_t>(code % m)};
      code /= m;
    }
    const AffiliationMap aff = AffiliationMap::from_layers(layers);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      links.clear();
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if ((mask >> p) & 1u) {
          const auto [i, j] = pairs[p];
          links.push_back({NodeId{i}, NodeId{j}, layers[i], layers[j]});
        }
      f(build_rank4(n, m, d, links, aff));
    }
  }
}

}  // namespace affnet::testing
