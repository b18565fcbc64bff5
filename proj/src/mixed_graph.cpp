#include "groupcausal/mixed_graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "groupcausal/error.hpp"

namespace groupcausal {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfEdge: return "SelfEdge";
        case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::InvalidWalk: return "InvalidWalk";
        case ErrorCode::CyclicInput: return "CyclicInput";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotAPartition: return "NotAPartition";
        case ErrorCode::NodeSetMismatch: return "NodeSetMismatch";
        case ErrorCode::UnknownGroup: return "UnknownGroup";
        case ErrorCode::SelfParent: return "SelfParent";
        case ErrorCode::NoSuchMacroEdge: return "NoSuchMacroEdge";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::NotMixing: return "NotMixing";
        case ErrorCode::GroupSetMismatch: return "GroupSetMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::string_view to_string(EdgeKind kind) noexcept {
    switch (kind) {
        case EdgeKind::Directed: return "->";
        case EdgeKind::Bidirected: return "<->";
        case EdgeKind::Undirected: return "--";
    }
    return "?";
}

std::optional<NodeId> MixedGraph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId MixedGraph::id(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw Error(ErrorCode::UnknownNode, "no node labelled '" + std::string(label) + "'");
}

NodeSet MixedGraph::all_nodes() const {
    NodeSet s;
    for (NodeId v = 0; v < size(); ++v) s.insert(v);
    return s;
}

NodeSet MixedGraph::ids(const std::vector<std::string>& labels) const {
    NodeSet s;
    for (const auto& l : labels) s.insert(id(l));
    return s;
}

NodeSet MixedGraph::adjacent(NodeId v) const {
    return children(v) | parents(v) | siblings(v) | neighbors(v);
}

bool MixedGraph::has_edge(NodeId from, EdgeKind kind, NodeId to) const {
    if (from >= size() || to >= size()) return false;
    switch (kind) {
        case EdgeKind::Directed: return children_[from].contains(to);
        case EdgeKind::Bidirected: return siblings_[from].contains(to);
        case EdgeKind::Undirected: return neighbors_[from].contains(to);
    }
    return false;
}

EdgeProfile MixedGraph::profile(NodeId a, NodeId b) const {
    std::uint8_t bits = 0;
    if (children_.at(a).contains(b)) bits |= EdgeProfile::kForward;
    if (parents_.at(a).contains(b)) bits |= EdgeProfile::kBackward;
    if (siblings_.at(a).contains(b)) bits |= EdgeProfile::kBidirected;
    if (neighbors_.at(a).contains(b)) bits |= EdgeProfile::kUndirected;
    return EdgeProfile(bits);
}

bool MixedGraph::has_undirected_edges() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.kind == EdgeKind::Undirected; });
}

bool MixedGraph::has_bidirected_edges() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.kind == EdgeKind::Bidirected; });
}

bool operator==(const MixedGraph& a, const MixedGraph& b) {
    if (a.size() != b.size()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    using LabelEdge = std::tuple<std::string, EdgeKind, std::string>;
    auto labelled = [](const MixedGraph& g) {
        std::set<LabelEdge> out;
        for (const auto& e : g.edges()) {
            std::string f = g.label(e.from);
            std::string t = g.label(e.to);
            if (e.kind != EdgeKind::Directed && t < f) std::swap(f, t);
            out.emplace(std::move(f), e.kind, std::move(t));
        }
        return out;
    };
    for (const auto& l : a.labels())
        if (!b.find(l)) return false;
    return labelled(a) == labelled(b);
}

GraphBuilder::GraphBuilder(const std::vector<std::string>& labels) {
    for (const auto& l : labels) add_node(l);
}

NodeId GraphBuilder::add_node(std::string label) {
    if (g_.index_.count(label) != 0) throw Error(ErrorCode::DuplicateLabel, "label '" + label + "' already used");
    const auto id = static_cast<NodeId>(g_.labels_.size());
    g_.index_.emplace(label, id);
    g_.labels_.push_back(std::move(label));
    g_.children_.emplace_back();
    g_.parents_.emplace_back();
    g_.siblings_.emplace_back();
    g_.neighbors_.emplace_back();
    return id;
}

bool GraphBuilder::add_edge(NodeId from, EdgeKind kind, NodeId to) {
    if (from >= size() || to >= size()) throw Error(ErrorCode::UnknownEndpoint, "edge endpoint index out of range");
    if (from == to) throw Error(ErrorCode::SelfEdge, "self-edge at '" + g_.labels_[from] + "'");
    switch (kind) {
        case EdgeKind::Directed:
            if (g_.children_[from].contains(to)) return false;
            g_.children_[from].insert(to);
            g_.parents_[to].insert(from);
            break;
        case EdgeKind::Bidirected:
            if (g_.siblings_[from].contains(to)) return false;
            g_.siblings_[from].insert(to);
            g_.siblings_[to].insert(from);
            break;
        case EdgeKind::Undirected:
            if (g_.neighbors_[from].contains(to)) return false;
            g_.neighbors_[from].insert(to);
            g_.neighbors_[to].insert(from);
            break;
    }
    if (kind != EdgeKind::Directed && to < from) std::swap(from, to);
    g_.edges_.push_back({from, kind, to});
    return true;
}

bool GraphBuilder::add_edge(std::string_view from, EdgeKind kind, std::string_view to) {
    auto f = g_.find(from);
    auto t = g_.find(to);
    if (!f || !t)
        throw Error(ErrorCode::UnknownEndpoint,
                    "edge " + std::string(from) + " " + std::string(to_string(kind)) + " " + std::string(to) +
                        " names an undeclared node");
    return add_edge(*f, kind, *t);
}

MixedGraph GraphBuilder::build() && {
    std::sort(g_.edges_.begin(), g_.edges_.end());
    return std::move(g_);
}

MixedGraph GraphBuilder::build() const& {
    GraphBuilder copy = *this;
    return std::move(copy).build();
}

MixedGraph build_graph(const std::vector<std::string>& nodes, const std::vector<EdgeSpec>& edges) {
    GraphBuilder b(nodes);
    for (const auto& e : edges) {
        if (!b.add_edge(e.from, e.kind, e.to))
            throw Error(ErrorCode::DuplicateEdge,
                        "edge " + e.from + " " + std::string(to_string(e.kind)) + " " + e.to + " given twice");
    }
    return std::move(b).build();
}

namespace {

NodeSet closure(const MixedGraph& g, NodeSet frontier, bool forward) {
    NodeSet seen = frontier;
    std::vector<NodeId> stack = frontier.to_vector();
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : forward ? g.children(v) : g.parents(v)) {
            if (!seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

NodeSet ancestors_of_set(const MixedGraph& g, const NodeSet& targets) { return closure(g, targets, false); }

NodeSet descendants_of_set(const MixedGraph& g, const NodeSet& sources) { return closure(g, sources, true); }

NodeSet relatives(const MixedGraph& g, NodeId a, Relation kind) {
    if (a >= g.size()) throw Error(ErrorCode::UnknownNode, "node index out of range");
    switch (kind) {
        case Relation::Parents: return g.parents(a);
        case Relation::Children: return g.children(a);
        case Relation::Descendants: return closure(g, NodeSet{a}, true);
        case Relation::Ancestors: {
            NodeSet out = closure(g, NodeSet{a}, false);
            out.erase(a);
            return out;
        }
    }
    return {};
}

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep) {
    GraphBuilder b;
    std::vector<NodeId> remap(g.size(), 0);
    for (NodeId v : keep) remap[v] = b.add_node(g.label(v));
    for (const auto& e : g.edges())
        if (keep.contains(e.from) && keep.contains(e.to)) b.add_edge(remap[e.from], e.kind, remap[e.to]);
    return std::move(b).build();
}

}  // namespace groupcausal
