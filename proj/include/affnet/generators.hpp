#pragma once

#include <cstddef>
#include <cstdint>

#include "affnet/core_model.hpp"

namespace affnet {

/// Erdos-Renyi graph over `n_nodes` with independent uniform affiliation to
/// one of `n_affiliations` layers.
struct ErConfig {
  std::size_t n_nodes = 2000;
  double link_probability = 0.003;
  std::size_t n_affiliations = 10;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless N >= 1, M >= 1 and p in [0, 1].
  void validate() const;
};

struct GeneratedNetwork {
  Rank4Network network;
  AffiliationMap affiliations;
};

/// Undirected G(N, p) with each link (i, j) stored at layers (aff(i), aff(j)).
/// Deterministic for a fixed config, including the seed.
GeneratedNetwork generate_er_affiliation(const ErConfig& config);

/// Occupancy of the tensor form of a network.
///
/// `links` counts each link once: distinct node pairs (ordered pairs when
/// directed). `stored_cells` counts tensor elements equal to 1: undirected
/// links are mirrored and rank-3 inter-affiliation links occupy two layers.
struct DensityReport {
  std::uint64_t links = 0;
  std::uint64_t stored_cells = 0;
  /// N^2 M for rank-3, N^2 M^2 for rank-4.
  std::uint64_t total_cells = 0;
  /// links / total_cells: data points per tensor element.
  double fraction = 0.0;
  double stored_fraction = 0.0;
};

DensityReport density_report(const Rank3Network& net);
DensityReport density_report(const Rank4Network& net);

}  // namespace affnet
