#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "groupcausal/node_set.hpp"

namespace groupcausal {

enum class EdgeKind : std::uint8_t { Directed, Bidirected, Undirected };

std::string_view to_string(EdgeKind kind) noexcept;  // "->", "<->", "--"

/// A typed edge. Directed edges point from `from` to `to`; symmetric kinds are stored with from < to.
struct Edge {
    NodeId from = 0;
    EdgeKind kind = EdgeKind::Directed;
    NodeId to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The edges joining an ordered node pair (a, b), one bit per possible edge: a->b, a<-b, a<->b, a--b.
class EdgeProfile {
public:
    static constexpr std::uint8_t kForward = 1;
    static constexpr std::uint8_t kBackward = 2;
    static constexpr std::uint8_t kBidirected = 4;
    static constexpr std::uint8_t kUndirected = 8;

    constexpr EdgeProfile() = default;
    constexpr explicit EdgeProfile(std::uint8_t bits) : bits_(bits) {}

    constexpr bool forward() const noexcept { return (bits_ & kForward) != 0; }
    constexpr bool backward() const noexcept { return (bits_ & kBackward) != 0; }
    constexpr bool bidirected() const noexcept { return (bits_ & kBidirected) != 0; }
    constexpr bool undirected() const noexcept { return (bits_ & kUndirected) != 0; }
    constexpr bool any() const noexcept { return bits_ != 0; }
    constexpr std::uint8_t bits() const noexcept { return bits_; }
    constexpr int count() const noexcept { return forward() + backward() + bidirected() + undirected(); }

    friend constexpr bool operator==(EdgeProfile, EdgeProfile) = default;

private:
    std::uint8_t bits_ = 0;
};

/// Mixed graph with directed, bidirected and undirected edges. Immutable once built; node order is insertion order.
class MixedGraph {
public:
    MixedGraph() = default;

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(NodeId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<NodeId> find(std::string_view label) const;
    /// Throws Error(UnknownNode) if absent.
    NodeId id(std::string_view label) const;
    NodeSet all_nodes() const;
    NodeSet ids(const std::vector<std::string>& labels) const;

    const NodeSet& children(NodeId v) const { return children_.at(v); }
    const NodeSet& parents(NodeId v) const { return parents_.at(v); }
    const NodeSet& siblings(NodeId v) const { return siblings_.at(v); }    // via <->
    const NodeSet& neighbors(NodeId v) const { return neighbors_.at(v); }  // via --
    NodeSet adjacent(NodeId v) const;

    bool has_edge(NodeId from, EdgeKind kind, NodeId to) const;
    EdgeProfile profile(NodeId a, NodeId b) const;

    /// All edges sorted by (from, kind, to).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool has_undirected_edges() const noexcept;
    bool has_bidirected_edges() const noexcept;

    /// Label-matched equality of node sets and typed edge sets; node order is ignored.
    friend bool operator==(const MixedGraph& a, const MixedGraph& b);

private:
    friend class GraphBuilder;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<NodeSet> children_;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> siblings_;
    std::vector<NodeSet> neighbors_;
    std::vector<Edge> edges_;
};

class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(const std::vector<std::string>& labels);

    /// Throws Error(DuplicateLabel).
    NodeId add_node(std::string label);
    /// Returns false if the typed edge was already present. Throws Error(SelfEdge) / Error(UnknownEndpoint).
    bool add_edge(NodeId from, EdgeKind kind, NodeId to);
    bool add_edge(std::string_view from, EdgeKind kind, std::string_view to);

    std::size_t size() const noexcept { return g_.labels_.size(); }
    std::optional<NodeId> find(std::string_view label) const { return g_.find(label); }

    MixedGraph build() &&;
    MixedGraph build() const&;

private:
    MixedGraph g_;
};

struct EdgeSpec {
    std::string from;
    EdgeKind kind = EdgeKind::Directed;
    std::string to;
};

/// Builds a graph from labels and typed edges. Errors: DuplicateLabel, SelfEdge, UnknownEndpoint, DuplicateEdge.
MixedGraph build_graph(const std::vector<std::string>& nodes, const std::vector<EdgeSpec>& edges);

enum class Relation { Parents, Children, Ancestors, Descendants };

/// Directed-edge relatives. Descendants include `a`; ancestors are proper ancestors and never include `a`.
NodeSet relatives(const MixedGraph& g, NodeId a, Relation kind);

/// Nodes with a directed path into `targets`, targets included.
NodeSet ancestors_of_set(const MixedGraph& g, const NodeSet& targets);
/// Nodes reachable from `sources` by directed paths, sources included.
NodeSet descendants_of_set(const MixedGraph& g, const NodeSet& sources);

/// Induced subgraph on `keep`, labels preserved, node order preserved.
MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep);

}  // namespace groupcausal
