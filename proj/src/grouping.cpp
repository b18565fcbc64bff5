#include "groupcausal/grouping.hpp"

#include <set>

#include "groupcausal/error.hpp"
#include "groupcausal/scc.hpp"

namespace groupcausal {

Partition Partition::from_sets(std::size_t node_count, std::vector<std::string> labels, std::vector<NodeSet> blocks) {
    if (labels.size() != blocks.size()) throw Error(ErrorCode::NotAPartition, "label and block counts differ");
    Partition p;
    p.group_of_.assign(node_count, 0);
    std::vector<bool> covered(node_count, false);
    std::set<std::string> seen_labels;
    for (std::size_t y = 0; y < blocks.size(); ++y) {
        if (!seen_labels.insert(labels[y]).second)
            throw Error(ErrorCode::NotAPartition, "group '" + labels[y] + "' declared twice");
        if (blocks[y].empty()) throw Error(ErrorCode::NotAPartition, "group '" + labels[y] + "' is empty");
        for (NodeId v : blocks[y]) {
            if (v >= node_count) throw Error(ErrorCode::NotAPartition, "group '" + labels[y] + "' names a foreign node");
            if (covered[v])
                throw Error(ErrorCode::NotAPartition, "node " + std::to_string(v) + " lies in two groups");
            covered[v] = true;
            p.group_of_[v] = static_cast<GroupId>(y);
        }
    }
    for (std::size_t v = 0; v < node_count; ++v)
        if (!covered[v]) throw Error(ErrorCode::NotAPartition, "node " + std::to_string(v) + " lies in no group");
    p.labels_ = std::move(labels);
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::from_labels(const MixedGraph& g,
                                 const std::vector<std::pair<std::string, std::vector<std::string>>>& blocks) {
    std::vector<std::string> labels;
    std::vector<NodeSet> sets;
    for (const auto& [label, members] : blocks) {
        labels.push_back(label);
        NodeSet s;
        for (const auto& m : members) {
            const NodeId v = g.id(m);
            if (s.contains(v)) throw Error(ErrorCode::NotAPartition, "node '" + m + "' repeated in group '" + label + "'");
            s.insert(v);
        }
        sets.push_back(std::move(s));
    }
    NodeSet covered;
    for (std::size_t y = 0; y < sets.size(); ++y) {
        if (sets[y].intersects(covered)) {
            const NodeId v = *(sets[y] & covered).begin();
            throw Error(ErrorCode::NotAPartition, "node '" + g.label(v) + "' lies in two groups");
        }
        covered |= sets[y];
    }
    for (NodeId v = 0; v < g.size(); ++v)
        if (!covered.contains(v)) throw Error(ErrorCode::NotAPartition, "node '" + g.label(v) + "' lies in no group");
    return from_sets(g.size(), std::move(labels), std::move(sets));
}

Partition Partition::singletons(const MixedGraph& g) {
    std::vector<NodeSet> sets;
    for (NodeId v = 0; v < g.size(); ++v) sets.push_back(NodeSet{v});
    return from_sets(g.size(), g.labels(), std::move(sets));
}

Partition Partition::single_block(const MixedGraph& g, std::string label) {
    return from_sets(g.size(), {std::move(label)}, {g.all_nodes()});
}

GroupId Partition::id(const std::string& label) const {
    for (GroupId y = 0; y < labels_.size(); ++y)
        if (labels_[y] == label) return y;
    throw Error(ErrorCode::UnknownGroup, "no group labelled '" + label + "'");
}

NodeSet Partition::all_groups() const {
    NodeSet out;
    for (GroupId y = 0; y < blocks_.size(); ++y) out.insert(y);
    return out;
}

NodeSet Partition::members(const NodeSet& groups) const {
    NodeSet out;
    for (NodeId y : groups) out |= blocks_.at(y);
    return out;
}

void Partition::check_against(const MixedGraph& g) const {
    if (group_of_.size() != g.size())
        throw Error(ErrorCode::NotAPartition, "partition covers " + std::to_string(group_of_.size()) +
                                                  " nodes, graph has " + std::to_string(g.size()));
}

MixedGraph coarsen(const MixedGraph& g, const Partition& p) {
    p.check_against(g);
    GraphBuilder b(p.labels());
    for (const Edge& e : g.edges()) {
        const GroupId y = p.group_of(e.from);
        const GroupId z = p.group_of(e.to);
        if (y != z) b.add_edge(y, e.kind, z);
    }
    return std::move(b).build();
}

SegmentRepresentation segment_representation(const MixedGraph& g, const Partition& p, const Walk& walk) {
    p.check_against(g);
    validate(g, walk);
    SegmentRepresentation r;
    Segment cur{p.group_of(walk.nodes[0]), Walk{{walk.nodes[0]}, {}}};
    for (std::size_t k = 0; k < walk.steps.size(); ++k) {
        const NodeId next = walk.nodes[k + 1];
        const GroupId gn = p.group_of(next);
        if (gn == cur.group) {
            cur.subwalk.nodes.push_back(next);
            cur.subwalk.steps.push_back(walk.steps[k]);
            continue;
        }
        r.connecting_edges.push_back({walk.nodes[k], walk.steps[k], next});
        r.segments.push_back(std::move(cur));
        cur = Segment{gn, Walk{{next}, {}}};
    }
    r.segments.push_back(std::move(cur));
    return r;
}

Walk coarsen_walk(const MixedGraph& g, const Partition& p, const Walk& walk) {
    const SegmentRepresentation r = segment_representation(g, p, walk);
    Walk out;
    for (const Segment& s : r.segments) out.nodes.push_back(s.group);
    for (const ConnectingEdge& e : r.connecting_edges) out.steps.push_back(e.step);
    return out;
}

bool is_acyclic_partition(const MixedGraph& g, const Partition& p) { return !has_directed_cycle(coarsen(g, p)); }

Partition maximally_acyclic_partition(const MixedGraph& g) {
    SccIndex scc = strongly_connected_components(g);
    std::vector<std::string> labels;
    for (const NodeSet& c : scc.components) {
        std::string l;
        for (NodeId v : c) l += (l.empty() ? "" : "+") + g.label(v);
        labels.push_back(std::move(l));
    }
    return Partition::from_sets(g.size(), std::move(labels), std::move(scc.components));
}

bool p_equivalent(const MixedGraph& g1, const MixedGraph& g2, const Partition& p) {
    p.check_against(g1);
    if (g1.size() != g2.size()) throw Error(ErrorCode::NodeSetMismatch, "graphs have different node counts");
    std::vector<NodeSet> blocks2;
    for (const NodeSet& blk : p.blocks()) {
        NodeSet mapped;
        for (NodeId v : blk) {
            const auto w = g2.find(g1.label(v));
            if (!w) throw Error(ErrorCode::NodeSetMismatch, "node '" + g1.label(v) + "' missing from second graph");
            mapped.insert(*w);
        }
        blocks2.push_back(std::move(mapped));
    }
    const Partition p2 = Partition::from_sets(g2.size(), p.labels(), std::move(blocks2));
    return coarsen(g1, p) == coarsen(g2, p2);
}

CommuteReport check_commute(const MixedGraph& g, const Partition& p) {
    CommuteReport r;
    r.coarse = coarsen(g, p);
    r.coarse_of_acyclic = coarsen(acyclify(g), p);
    r.commutes = r.coarse == r.coarse_of_acyclic;
    return r;
}

TransferReport macro_separation_transfers(const MixedGraph& g, const Partition& p, GroupId y, GroupId z,
                                          const NodeSet& s, SeparationKind kind) {
    p.check_against(g);
    if (y >= p.size() || z >= p.size()) throw Error(ErrorCode::UnknownGroup, "group index outside the partition");
    if (y == z || s.contains(y) || s.contains(z))
        throw Error(ErrorCode::InvalidArgument, "the two groups must differ and lie outside the conditioning set");
    const MixedGraph coarse = coarsen(g, p);
    TransferReport r;
    r.macro_sep = separated(coarse, y, z, s, kind);
    r.micro_all_sep = sets_separated(g, p.block(y), p.block(z), p.members(s), kind);
    return r;
}

MixedGraph graph_from_vscm(const VscmSpec& spec) {
    GraphBuilder b(spec.groups);
    for (const auto& [child, pas] : spec.parents) {
        if (!b.find(child)) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + child + "'");
        for (const auto& pa : pas) {
            if (pa == child) throw Error(ErrorCode::SelfParent, "group '" + child + "' lists itself as a parent");
            if (!b.find(pa)) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + pa + "'");
            b.add_edge(pa, EdgeKind::Directed, child);
        }
    }
    for (const auto& [x, y] : spec.dependent_noise) {
        if (!b.find(x)) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + x + "'");
        if (!b.find(y)) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + y + "'");
        if (x == y) throw Error(ErrorCode::InvalidArgument, "noise dependence pair repeats group '" + x + "'");
        b.add_edge(x, EdgeKind::Bidirected, y);
    }
    return std::move(b).build();
}

}  // namespace groupcausal
