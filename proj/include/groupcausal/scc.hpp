#pragma once

#include <vector>

#include "groupcausal/mixed_graph.hpp"

namespace groupcausal {

/// Strongly connected components over directed edges. Components are ordered by their smallest member.
struct SccIndex {
    std::vector<std::size_t> assignment;  // node -> component
    std::vector<NodeSet> components;

    const NodeSet& component_of(NodeId v) const { return components.at(assignment.at(v)); }
    bool same(NodeId a, NodeId b) const { return assignment.at(a) == assignment.at(b); }
    bool all_singletons() const noexcept { return components.size() == assignment.size(); }
};

SccIndex strongly_connected_components(const MixedGraph& g);

/// True iff the directed part of g has a cycle.
bool has_directed_cycle(const MixedGraph& g);

}  // namespace groupcausal
