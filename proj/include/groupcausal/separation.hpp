#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/walk.hpp"

namespace groupcausal {

enum class SeparationKind : std::uint8_t { M, Sigma };

std::string_view to_string(SeparationKind kind) noexcept;  // "m", "sigma"

enum class BlockReason : std::uint8_t { EndpointInS, ColliderNoDescendantInS, NoncolliderInS, SigmaNoncolliderInS };

std::string_view to_string(BlockReason reason) noexcept;

struct BlockWitness {
    std::size_t index = 0;  // position in walk.nodes
    BlockReason reason = BlockReason::EndpointInS;
};

struct BlockReport {
    Walk walk;
    bool blocked = false;
    std::optional<BlockWitness> witness;  // lowest-index witness, present iff blocked
};

/// Throws Error(InvalidWalk).
BlockReport is_blocked(const MixedGraph& g, const Walk& walk, const NodeSet& s, SeparationKind kind);

/// Default engine, over paths. Walk-state reachability on graphs without undirected edges, where walks and paths
/// agree; an exact path search otherwise.
bool separated(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind);

/// Oracle: enumerates all paths and checks each against the blocking conditions. Small graphs only.
bool separated_bruteforce(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind,
                          std::size_t node_budget = kDefaultPathBudget);

/// First open path in enumeration order, if any.
std::optional<Walk> open_path(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind,
                              std::size_t node_budget = kDefaultPathBudget);

MixedGraph acyclify(const MixedGraph& g);

/// m-separation on acyclify(g). Agrees with sigma-separation on g except when an undirected edge joins two nodes of
/// one strongly connected component: acyclification turns it into a bidirected edge.
bool sigma_via_acyclification(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s);

/// m-separation by reachability over (node, arrived-with-arrowhead) states. Throws Error(CyclicInput) unless every
/// SCC of g is a singleton, Error(InvalidArgument) if g has undirected edges.
bool reachability_separated(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s);

/// Same reachability without the acyclicity precondition, for a set of sources: every node joined to some source by
/// an m-open walk given s. Sources in s reach nothing. Agrees with path semantics when g has no undirected edges.
NodeSet m_reachable(const MixedGraph& g, const NodeSet& sources, const NodeSet& s);

/// All-pairs separation between two node sets under one conditioning set.
bool sets_separated(const MixedGraph& g, const NodeSet& as, const NodeSet& bs, const NodeSet& s, SeparationKind kind);

/// Repeated queries against one graph; SCCs for Sigma are computed once.
class SeparationOracle {
public:
    SeparationOracle(const MixedGraph& g, SeparationKind kind);

    SeparationKind kind() const noexcept { return kind_; }
    bool separated(NodeId a, NodeId b, const NodeSet& s) const;
    bool sets_separated(const NodeSet& as, const NodeSet& bs, const NodeSet& s) const;

private:
    SeparationKind kind_;
    MixedGraph graph_;
    std::optional<SccIndex> scc_;
};

}  // namespace groupcausal
