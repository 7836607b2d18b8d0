#pragma once

// Conversions between the rank-4 and rank-3 forms of a single-affiliation
// network, plus the structural deductions the rank-3 form supports: whether a
// link crosses affiliations and which affiliation each node belongs to.

#include <optional>
#include <vector>

#include "affnet/core_model.hpp"

namespace affnet {

enum class LinkClass { Intra, Inter };

struct InferenceResult {
  AffiliationMap affiliations;
  /// Exactly the nodes left unassigned, ascending.
  std::vector<NodeId> indeterminate_nodes;
};

/// Projects every link (i, j, alpha, beta) into layer alpha and, when
/// alpha != beta, also into layer beta. The rank-4 affiliation map is attached
/// to the result.
Rank3Network rank4_to_rank3(const Rank4Network& a4);

/// Rebuilds the rank-4 network. A pair held in one layer becomes an
/// intra-affiliation link in that layer; a pair held in two layers becomes an
/// inter-affiliation link oriented by the endpoints' affiliations.
///
/// Affiliations come from `affiliations` when given, then from the map
/// attached to `a3`, and any remaining gaps from infer_affiliations. Throws
/// IndeterminateOrdering when neither endpoint of an inter-affiliation link
/// has a known affiliation, and AffiliationViolation when a supplied map
/// contradicts the layers a pair occupies.
Rank4Network rank3_to_rank4(const Rank3Network& a3, std::optional<AffiliationMap> affiliations = std::nullopt);

/// Deduces each node's affiliation from where its full set of links lives.
/// A node whose links all sit in the same two layers is resolved from a
/// neighbour whose affiliation is already known; this propagates to a
/// fixpoint. Isolated nodes and components where every link overlaps the
/// same two layers remain indeterminate.
InferenceResult infer_affiliations(const Rank3Network& a3);

/// Inter when the pair overlaps two layers, Intra when it lives in one.
/// Throws LinkNotFound for absent pairs.
LinkClass classify_link(const Rank3Network& a3, NodeId i, NodeId j);

}  // namespace affnet
