#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/separation.hpp"
#include "groupcausal/walk.hpp"

namespace groupcausal {

using GroupId = std::uint32_t;

/// Labelled disjoint blocks covering the nodes of one graph. Block order is the coarse node order.
class Partition {
public:
    Partition() = default;

    /// Throws Error(NotAPartition) for empty, overlapping or missing blocks and repeated group labels,
    /// Error(UnknownNode) for members not in g.
    static Partition from_labels(const MixedGraph& g, const std::vector<std::pair<std::string, std::vector<std::string>>>& blocks);
    static Partition from_sets(std::size_t node_count, std::vector<std::string> labels, std::vector<NodeSet> blocks);
    static Partition singletons(const MixedGraph& g);
    static Partition single_block(const MixedGraph& g, std::string label = "ALL");

    std::size_t size() const noexcept { return blocks_.size(); }
    std::size_t node_count() const noexcept { return group_of_.size(); }
    const std::string& label(GroupId y) const { return labels_.at(y); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const NodeSet& block(GroupId y) const { return blocks_.at(y); }
    const std::vector<NodeSet>& blocks() const noexcept { return blocks_; }
    GroupId group_of(NodeId v) const { return group_of_.at(v); }
    /// Throws Error(UnknownGroup).
    GroupId id(const std::string& label) const;
    NodeSet all_groups() const;
    /// Union of the listed blocks.
    NodeSet members(const NodeSet& groups) const;

    /// Throws Error(NotAPartition) unless this partition covers exactly g's nodes.
    void check_against(const MixedGraph& g) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<NodeSet> blocks_;
    std::vector<GroupId> group_of_;
};

/// Quotient graph: one node per block (labelled by the group), a typed edge between distinct groups iff a crossing
/// micro edge of that type exists.
MixedGraph coarsen(const MixedGraph& g, const Partition& p);

struct Segment {
    GroupId group = 0;
    Walk subwalk;
};

struct ConnectingEdge {
    NodeId from = 0;
    Step step = Step::Forward;
    NodeId to = 0;
};

struct SegmentRepresentation {
    std::vector<Segment> segments;
    std::vector<ConnectingEdge> connecting_edges;  // between segment k and k+1
};

/// Throws Error(InvalidWalk), Error(NotAPartition).
SegmentRepresentation segment_representation(const MixedGraph& g, const Partition& p, const Walk& walk);

/// The walk's image on coarsen(g, p); coarse node ids are group ids.
Walk coarsen_walk(const MixedGraph& g, const Partition& p, const Walk& walk);

bool is_acyclic_partition(const MixedGraph& g, const Partition& p);

/// Blocks are the SCCs, ordered by smallest member; a block is labelled by its members joined with '+'.
Partition maximally_acyclic_partition(const MixedGraph& g);

/// Throws Error(NodeSetMismatch) unless g1 and g2 carry the same labels; p is read against g1.
bool p_equivalent(const MixedGraph& g1, const MixedGraph& g2, const Partition& p);

struct CommuteReport {
    bool commutes = false;
    MixedGraph coarse;             // coarsen(g, p)
    MixedGraph coarse_of_acyclic;  // coarsen(acyclify(g), p)
};

CommuteReport check_commute(const MixedGraph& g, const Partition& p);

struct TransferReport {
    bool macro_sep = false;
    bool micro_all_sep = false;
};

/// Throws Error(InvalidArgument) if y or z is in s or y == z.
TransferReport macro_separation_transfers(const MixedGraph& g, const Partition& p, GroupId y, GroupId z,
                                          const NodeSet& s, SeparationKind kind);

struct VscmSpec {
    std::vector<std::string> groups;
    std::map<std::string, std::vector<std::string>> parents;
    std::vector<std::pair<std::string, std::string>> dependent_noise;
};

/// Throws Error(SelfParent), Error(UnknownGroup).
MixedGraph graph_from_vscm(const VscmSpec& spec);

}  // namespace groupcausal
