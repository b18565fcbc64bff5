#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupcausal/grouping.hpp"
#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/separation.hpp"

namespace groupcausal {

/// Group-level conditional independence answered by the micro graph: Y and Z are independent given S iff every
/// pair of Y x Z is separated given the union of the blocks in S.
class GroupCiOracle {
public:
    GroupCiOracle(MixedGraph g, Partition p, SeparationKind kind);

    std::size_t groups() const noexcept { return partition_.size(); }
    const Partition& partition() const noexcept { return partition_; }
    const MixedGraph& graph() const noexcept { return graph_; }
    SeparationKind kind() const noexcept { return separation_.kind(); }

    /// Throws Error(UnknownGroup) for bad ids and Error(InvalidArgument) if y == z or either lies in s.
    bool independent(GroupId y, GroupId z, const NodeSet& s) const;

private:
    MixedGraph graph_;
    Partition partition_;
    SeparationOracle separation_;
};

bool group_ci(const GroupCiOracle& oracle, GroupId y, GroupId z, const NodeSet& s);

using GroupPair = std::pair<GroupId, GroupId>;  // first < second

struct Skeleton {
    std::vector<NodeSet> adjacency;
    std::map<GroupPair, NodeSet> sepsets;  // first separating set found, per removed pair

    bool adjacent(GroupId a, GroupId b) const { return adjacency.at(a).contains(b); }
    std::vector<GroupPair> edges() const;
    friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

/// PC-stable: removals are committed at the end of each level. Pairs are visited in lexicographic order and
/// conditioning sets are drawn from adj(a) \ {b}, then adj(b) \ {a}, by size and then lexicographically.
Skeleton pc_skeleton(const GroupCiOracle& oracle);

enum class Mark : std::uint8_t { None, Forward, Backward };  // Forward: first -> second

struct Triple {
    GroupId x = 0, y = 0, z = 0;  // x < z, y the middle node

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct PartiallyOrientedGraph {
    Skeleton skeleton;
    std::map<GroupPair, Mark> marks;  // every skeleton edge has an entry
    std::vector<Triple> colliders;
    std::vector<Triple> noncolliders;
    std::vector<Triple> ambiguous;
    std::vector<Triple> conflicts;  // colliders whose orientation clashed with an earlier one

    bool oriented(GroupId from, GroupId to) const;
    bool undirected(GroupId a, GroupId b) const;
    bool is_ambiguous(GroupId x, GroupId y, GroupId z) const;
    friend bool operator==(const PartiallyOrientedGraph&, const PartiallyOrientedGraph&) = default;
};

/// Judges each unshielded triple over every subset of adj(x) u adj(z) plus the recorded separating set.
PartiallyOrientedGraph orient_conservative(const Skeleton& skeleton, const GroupCiOracle& oracle);

/// Orients b -> c whenever a -> b, b - c, a and c non-adjacent and (a, b, c) is not ambiguous; to fixpoint.
PartiallyOrientedGraph meek_rule1(PartiallyOrientedGraph pog);

struct DiffReport {
    std::vector<GroupPair> false_positives;  // adjacent in the output only
    std::vector<GroupPair> false_negatives;  // adjacent in the truth only
    std::vector<GroupPair> wrong_orientations;  // (from, to) oriented without a directed truth edge from -> to
    std::vector<Triple> ambiguous;

    bool empty() const noexcept {
        return false_positives.empty() && false_negatives.empty() && wrong_orientations.empty() && ambiguous.empty();
    }
};

/// `truth` carries the group labels of the oracle partition, in any order. Throws Error(GroupSetMismatch).
DiffReport compare_to_truth(const PartiallyOrientedGraph& pog, const Partition& groups, const MixedGraph& truth);

struct SigmaAwareResult {
    bool consistent = false;
    std::vector<GroupPair> dag_edges;  // a faithful DAG orientation when consistent, as (from, to)
};

/// Searches orientations of the skeleton for a DAG that respects the judged colliders and non-colliders and whose
/// d-separations match the oracle on every pair and conditioning set. Throws Error(BudgetExceeded) above 16 edges.
SigmaAwareResult sigma_aware_check(const PartiallyOrientedGraph& pog, const GroupCiOracle& oracle);

struct DiscoveryResult {
    PartiallyOrientedGraph pattern;              // after Meek rule 1, or before it when sigma-aware found no DAG
    std::optional<SigmaAwareResult> sigma_aware;
};

DiscoveryResult discover(const GroupCiOracle& oracle, bool sigma_aware = false);

}  // namespace groupcausal
