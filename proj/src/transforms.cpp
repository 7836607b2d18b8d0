#include "affnet/transforms.hpp"

#include <deque>

#include <fmt/format.h>

namespace affnet {

namespace {

NetworkLabels labels_of(const LabelTable& nodes, const LabelTable& layers) { return {nodes, layers}; }

LayerId other_layer(const PairLayers& p, LayerId known) {
  return p.layers[0] == known ? p.layers[1] : p.layers[0];
}

}  // namespace

Rank3Network rank4_to_rank3(const Rank4Network& a4) {
  std::vector<LayerLink> links;
  links.reserve(a4.links().size() * 2);
  for (const Link4& l : a4.links()) {
    links.push_back({l.source, l.target, l.source_layer});
    if (l.target_layer != l.source_layer) links.push_back({l.source, l.target, l.target_layer});
  }
  return build_rank3(a4.n_nodes(), a4.n_layers(), a4.directedness(), links,
                     labels_of(a4.node_labels(), a4.layer_labels()), a4.affiliations());
}

InferenceResult infer_affiliations(const Rank3Network& a3) {
  const std::size_t n = a3.n_nodes();
  const std::size_t m = a3.n_layers();
  const auto pairs = a3.pairs();

  // Incidence lists: pair entries touching each node.
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const auto& p : pairs) {
    ++offsets[index(p.source) + 1];
    ++offsets[index(p.target) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> incident(offsets[n]);
  {
    auto fill = offsets;
    for (std::uint32_t k = 0; k < pairs.size(); ++k) {
      incident[fill[index(pairs[k].source)]++] = k;
      incident[fill[index(pairs[k].target)]++] = k;
    }
  }

  // Candidate layers: those holding every link of the node.
  std::vector<std::uint32_t> per_layer(m, 0);
  std::vector<PairLayers> candidates(n);
  AffiliationMap aff(n);
  std::deque<NodeId> resolved;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t degree = offsets[i + 1] - offsets[i];
    if (degree == 0) continue;
    std::fill(per_layer.begin(), per_layer.end(), 0);
    for (std::uint32_t e = offsets[i]; e < offsets[i + 1]; ++e)
      for (LayerId l : pairs[incident[e]].layers.view()) ++per_layer[index(l)];
    PairLayers& cand = candidates[i];
    for (std::uint32_t l = 0; l < m; ++l) {
      if (per_layer[l] != degree) continue;
      if (cand.count == 2)
        throw Error(Errc::OverlapViolation, fmt::format("node {} fully present in more than two layers", i));
      cand.layers[cand.count++] = LayerId{l};
    }
    if (cand.count == 0)
      throw Error(Errc::AffiliationViolation,
                  fmt::format("node {} has no layer holding all of its links; not a single-affiliation network", i));
    if (cand.count == 1) {
      aff.assign(NodeId{i}, cand.layers[0]);
      resolved.push_back(NodeId{i});
    }
  }

  // Fixpoint: a known endpoint orients each overlapping link it touches.
  while (!resolved.empty()) {
    const NodeId j = resolved.front();
    resolved.pop_front();
    const LayerId lj = *aff[j];
    for (std::uint32_t e = offsets[index(j)]; e < offsets[index(j) + 1]; ++e) {
      const auto& p = pairs[incident[e]];
      const NodeId i = p.source == j ? p.target : p.source;
      if (aff.is_determinate(i)) continue;
      if (!p.layers.contains(lj))
        throw Error(Errc::AffiliationViolation,
                    fmt::format("pair ({}, {}) does not include the layer of node {}", index(p.source),
                                index(p.target), index(j)));
      const LayerId li = p.layers.count == 2 ? other_layer(p.layers, lj) : lj;
      if (!candidates[index(i)].contains(li))
        throw Error(Errc::AffiliationViolation,
                    fmt::format("node {} deduced into layer {} which does not hold all of its links", index(i),
                                index(li)));
      aff.assign(i, li);
      resolved.push_back(i);
    }
  }

  // Cross-check the deduced map against every pair.
  (void)a3.with_affiliations(aff);

  InferenceResult result{std::move(aff), {}};
  result.indeterminate_nodes = result.affiliations.indeterminate_nodes();
  return result;
}

Rank4Network rank3_to_rank4(const Rank3Network& a3, std::optional<AffiliationMap> affiliations) {
  AffiliationMap aff = affiliations ? std::move(*affiliations)
                                    : a3.affiliations().value_or(AffiliationMap(a3.n_nodes()));
  // Rejects a supplied map that contradicts the structure.
  (void)a3.with_affiliations(aff);

  bool needs_inference = false;
  for (const auto& p : a3.pairs())
    if (p.layers.count == 2 && !aff.is_determinate(p.source) && !aff.is_determinate(p.target))
      needs_inference = true;
  if (needs_inference) {
    const InferenceResult inferred = infer_affiliations(a3);
    for (std::uint32_t i = 0; i < a3.n_nodes(); ++i)
      if (!aff.is_determinate(NodeId{i}))
        if (auto l = inferred.affiliations[NodeId{i}]) aff.assign(NodeId{i}, *l);
  }

  std::vector<Link4> links;
  links.reserve(a3.pairs().size());
  for (const auto& p : a3.pairs()) {
    if (p.layers.count == 1) {
      links.push_back({p.source, p.target, p.layers.layers[0], p.layers.layers[0]});
      continue;
    }
    const auto ai = aff[p.source];
    const auto aj = aff[p.target];
    if (ai) {
      links.push_back({p.source, p.target, *ai, other_layer(p.layers, *ai)});
    } else if (aj) {
      links.push_back({p.source, p.target, other_layer(p.layers, *aj), *aj});
    } else {
      throw Error(Errc::IndeterminateOrdering,
                  fmt::format("cannot orient inter-affiliation link ({}, {}): neither endpoint has a known "
                              "affiliation",
                              a3.node_labels().label(index(p.source)), a3.node_labels().label(index(p.target))));
    }
  }
  return Rank4Network::from_links(a3.n_nodes(), a3.n_layers(), a3.directedness(), links, std::move(aff),
                                  labels_of(a3.node_labels(), a3.layer_labels()));
}

LinkClass classify_link(const Rank3Network& a3, NodeId i, NodeId j) {
  const PairLayers p = a3.layers_of(i, j);
  if (p.count == 0) throw Error(Errc::LinkNotFound, fmt::format("pair ({}, {}) not present", index(i), index(j)));
  return p.count == 2 ? LinkClass::Inter : LinkClass::Intra;
}

}  // namespace affnet
