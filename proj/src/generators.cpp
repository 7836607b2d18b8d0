#include "affnet/generators.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "affnet/random.hpp"

namespace affnet {

void ErConfig::validate() const {
  if (n_nodes < 1) throw Error(Errc::InvalidArgument, "ER config needs at least one node");
  if (n_affiliations < 1) throw Error(Errc::InvalidArgument, "ER config needs at least one affiliation");
  if (!(link_probability >= 0.0 && link_probability <= 1.0))
    throw Error(Errc::InvalidArgument, fmt::format("link probability {} outside [0, 1]", link_probability));
  if (n_nodes > std::numeric_limits<std::uint32_t>::max())
    throw Error(Errc::InvalidArgument, "too many nodes");
}

GeneratedNetwork generate_er_affiliation(const ErConfig& config) {
  config.validate();
  SplitMix64 rng(config.seed);

  const std::size_t n = config.n_nodes;
  std::vector<LayerId> layers(n);
  for (auto& l : layers) l = LayerId{static_cast<std::uint32_t>(rng.below(config.n_affiliations))};
  AffiliationMap aff = AffiliationMap::from_layers(layers);

  std::vector<Link4> links;
  auto add = [&](std::size_t i, std::size_t j) {
    links.push_back({NodeId{static_cast<std::uint32_t>(i)}, NodeId{static_cast<std::uint32_t>(j)}, layers[i],
                     layers[j]});
  };
  const double p = config.link_probability;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) add(i, j);
  } else if (p > 0.0) {
    // Geometric skipping over the lower triangle (Batagelj & Brandes), so
    // the cost scales with the number of links rather than N^2.
    const double log_q = std::log1p(-p);
    std::size_t v = 1;
    std::int64_t w = -1;
    while (v < n) {
      const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
      if (skip > static_cast<double>(n) * static_cast<double>(n)) break;
      w += 1 + static_cast<std::int64_t>(skip);
      while (v < n && w >= static_cast<std::int64_t>(v)) {
        w -= static_cast<std::int64_t>(v);
        ++v;
      }
      if (v < n) add(static_cast<std::size_t>(w), v);
    }
  }
  Rank4Network net = build_rank4(n, config.n_affiliations, Directedness::Undirected, links, aff);
  return {std::move(net), std::move(aff)};
}

namespace {

DensityReport finish(std::uint64_t links, std::uint64_t stored, std::uint64_t total) {
  DensityReport d;
  d.links = links;
  d.stored_cells = stored;
  d.total_cells = total;
  if (total > 0) {
    d.fraction = static_cast<double>(links) / static_cast<double>(total);
    d.stored_fraction = static_cast<double>(stored) / static_cast<double>(total);
  }
  return d;
}

}  // namespace

DensityReport density_report(const Rank3Network& net) {
  const std::uint64_t n = net.n_nodes();
  const std::uint64_t mirror = net.directedness() == Directedness::Undirected ? 2 : 1;
  return finish(net.pairs().size(), net.links().size() * mirror, n * n * net.n_layers());
}

DensityReport density_report(const Rank4Network& net) {
  const std::uint64_t n = net.n_nodes();
  const std::uint64_t m = net.n_layers();
  const std::uint64_t mirror = net.directedness() == Directedness::Undirected ? 2 : 1;
  return finish(net.links().size(), net.links().size() * mirror, n * n * m * m);
}

}  // namespace affnet
