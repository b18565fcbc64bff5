#include "groupcausal/separation.hpp"

#include <functional>

#include "groupcausal/error.hpp"
#include "groupcausal/scc.hpp"

namespace groupcausal {

std::string_view to_string(SeparationKind kind) noexcept { return kind == SeparationKind::M ? "m" : "sigma"; }

std::string_view to_string(BlockReason reason) noexcept {
    switch (reason) {
        case BlockReason::EndpointInS: return "endpoint-in-S";
        case BlockReason::ColliderNoDescendantInS: return "collider-no-descendant-in-S";
        case BlockReason::NoncolliderInS: return "noncollider-in-S";
        case BlockReason::SigmaNoncolliderInS: return "sigma-noncollider-in-S";
    }
    return "?";
}

namespace {

void check_node(const MixedGraph& g, NodeId v) {
    if (v >= g.size()) throw Error(ErrorCode::UnknownNode, "node index " + std::to_string(v) + " outside the graph");
}

// Blocking test against precomputed An(S) and SCCs; walk assumed valid.
std::optional<BlockWitness> first_block(const Walk& w, const NodeSet& s, const NodeSet& an_s, const SccIndex* scc) {
    const std::size_t last = w.nodes.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        const NodeId v = w.nodes[i];
        if (i == 0 || i == last) {
            if (s.contains(v)) return BlockWitness{i, BlockReason::EndpointInS};
            continue;
        }
        if (w.is_collider(i)) {
            if (!an_s.contains(v)) return BlockWitness{i, BlockReason::ColliderNoDescendantInS};
            continue;
        }
        if (!s.contains(v)) continue;
        if (scc == nullptr) return BlockWitness{i, BlockReason::NoncolliderInS};
        const Step in = w.steps[i - 1];
        const Step out = w.steps[i];
        const bool to_prev = (in == Step::Backward || in == Step::Undirected) && !scc->same(v, w.nodes[i - 1]);
        const bool to_next = (out == Step::Forward || out == Step::Undirected) && !scc->same(v, w.nodes[i + 1]);
        if (to_prev || to_next) return BlockWitness{i, BlockReason::SigmaNoncolliderInS};
    }
    return std::nullopt;
}


// How the search entered a node: with an arrowhead, or with a tail that sits on an edge to another SCC.
struct Arrival {
    bool head = false;
    bool tail_leaves_scc = false;
    std::uint8_t bit() const { return head ? 4 : tail_leaves_scc ? 2 : 1; }
};

struct Rules {
    const MixedGraph& g;
    const NodeSet& s;
    NodeSet an_s;
    const SccIndex* scc;  // null for m-separation

    Rules(const MixedGraph& graph, const NodeSet& cond, const SccIndex* sccs)
        : g(graph), s(cond), an_s(ancestors_of_set(graph, cond)), scc(sccs) {}

    // Whether a walk standing at inner node v may continue along `st` to w.
    bool may_pass(NodeId v, Arrival in, Step st, NodeId w) const {
        if (in.head && head_at_start(st)) return an_s.contains(v);
        if (!s.contains(v)) return true;
        if (scc == nullptr) return false;
        const bool tail_out = st == Step::Forward || st == Step::Undirected;
        return !in.tail_leaves_scc && !(tail_out && !scc->same(v, w));
    }

    Arrival arrive(NodeId from, Step st, NodeId w) const {
        const bool head = head_at_end(st);
        return {head, !head && scc != nullptr && !scc->same(from, w)};
    }

    template <typename F>
    void for_each_step(NodeId v, F&& f) const {
        for (NodeId w : g.children(v)) f(Step::Forward, w);
        for (NodeId w : g.parents(v)) f(Step::Backward, w);
        for (NodeId w : g.siblings(v)) f(Step::Bidirected, w);
        for (NodeId w : g.neighbors(v)) f(Step::Undirected, w);
    }
};

// Nodes joined to a source by an open walk.
NodeSet walk_reachable(const Rules& r, const NodeSet& sources) {
    std::vector<std::uint8_t> seen(r.g.size(), 0);
    std::vector<std::pair<NodeId, Arrival>> stack;
    NodeSet reached;
    auto push = [&](NodeId w, Arrival in) {
        if (seen[w] & in.bit()) return;
        seen[w] |= in.bit();
        reached.insert(w);
        stack.emplace_back(w, in);
    };
    for (NodeId src : sources) {
        if (r.s.contains(src)) continue;
        r.for_each_step(src, [&](Step st, NodeId w) { push(w, r.arrive(src, st, w)); });
    }
    while (!stack.empty()) {
        const auto [v, in] = stack.back();
        stack.pop_back();
        r.for_each_step(v, [&](Step st, NodeId w) {
            if (r.may_pass(v, in, st, w)) push(w, r.arrive(v, st, w));
        });
    }
    return reached;
}

// Exact search over simple paths. Walks can bounce along an undirected edge and return to a node without the
// arrowhead they arrived with, so on graphs with undirected edges walk reachability overstates connection.
bool path_connected(const Rules& r, NodeId a, NodeId b) {
    NodeSet on_path{a};
    const std::function<bool(NodeId, Arrival)> go = [&](NodeId v, Arrival in) {
        bool found = false;
        r.for_each_step(v, [&](Step st, NodeId w) {
            if (found || on_path.contains(w)) return;
            if (v != a && !r.may_pass(v, in, st, w)) return;
            if (w == b) {
                found = true;
                return;
            }
            on_path.insert(w);
            found = go(w, r.arrive(v, st, w));
            on_path.erase(w);
        });
        return found;
    };
    return go(a, {});
}

bool separated_by_rules(const Rules& r, NodeId a, NodeId b) {
    if (r.s.contains(a) || r.s.contains(b)) return true;
    if (r.g.has_undirected_edges()) return !path_connected(r, a, b);
    return !walk_reachable(r, NodeSet{a}).contains(b);
}

}  // namespace

BlockReport is_blocked(const MixedGraph& g, const Walk& walk, const NodeSet& s, SeparationKind kind) {
    validate(g, walk);
    const NodeSet an_s = ancestors_of_set(g, s);
    std::optional<SccIndex> scc;
    if (kind == SeparationKind::Sigma) scc = strongly_connected_components(g);
    BlockReport r{walk, false, first_block(walk, s, an_s, scc ? &*scc : nullptr)};
    r.blocked = r.witness.has_value();
    return r;
}

std::optional<Walk> open_path(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind,
                              std::size_t node_budget) {
    check_node(g, a);
    check_node(g, b);
    const NodeSet an_s = ancestors_of_set(g, s);
    std::optional<SccIndex> scc;
    if (kind == SeparationKind::Sigma) scc = strongly_connected_components(g);
    std::optional<Walk> found;
    for_each_path(
        g, a, b,
        [&](const Walk& w) {
            if (first_block(w, s, an_s, scc ? &*scc : nullptr)) return true;
            found = w;
            return false;
        },
        node_budget);
    return found;
}

bool separated_bruteforce(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind,
                          std::size_t node_budget) {
    return !open_path(g, a, b, s, kind, node_budget).has_value();
}

NodeSet m_reachable(const MixedGraph& g, const NodeSet& sources, const NodeSet& s) {
    return walk_reachable(Rules(g, s, nullptr), sources);
}

bool reachability_separated(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s) {
    check_node(g, a);
    check_node(g, b);
    if (has_directed_cycle(g))
        throw Error(ErrorCode::CyclicInput, "reachability engine requires singleton strongly connected components");
    if (g.has_undirected_edges())
        throw Error(ErrorCode::InvalidArgument, "reachability engine is exact only without undirected edges");
    return separated_by_rules(Rules(g, s, nullptr), a, b);
}

MixedGraph acyclify(const MixedGraph& g) {
    const SccIndex scc = strongly_connected_components(g);
    GraphBuilder out(g.labels());
    for (NodeId b = 0; b < g.size(); ++b) {
        const NodeSet& comp = scc.component_of(b);
        NodeSet pa;
        for (NodeId c : comp) pa |= g.parents(c);
        for (NodeId a : pa - comp) out.add_edge(a, EdgeKind::Directed, b);
    }
    for (const Edge& e : g.edges())
        if (e.kind == EdgeKind::Undirected && !scc.same(e.from, e.to)) out.add_edge(e.from, e.kind, e.to);
    for (const NodeSet& comp : scc.components) {
        for (NodeId a : comp)
            for (NodeId b : comp)
                if (a < b) out.add_edge(a, EdgeKind::Bidirected, b);
    }
    for (const Edge& e : g.edges()) {
        if (e.kind != EdgeKind::Bidirected) continue;
        for (NodeId a : scc.component_of(e.from))
            for (NodeId b : scc.component_of(e.to))
                if (a != b) out.add_edge(a, EdgeKind::Bidirected, b);
    }
    return std::move(out).build();
}

bool sigma_via_acyclification(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s) {
    check_node(g, a);
    check_node(g, b);
    const MixedGraph acy = acyclify(g);
    return separated_by_rules(Rules(acy, s, nullptr), a, b);
}

bool separated(const MixedGraph& g, NodeId a, NodeId b, const NodeSet& s, SeparationKind kind) {
    check_node(g, a);
    check_node(g, b);
    std::optional<SccIndex> scc;
    if (kind == SeparationKind::Sigma) scc = strongly_connected_components(g);
    return separated_by_rules(Rules(g, s, scc ? &*scc : nullptr), a, b);
}

bool sets_separated(const MixedGraph& g, const NodeSet& as, const NodeSet& bs, const NodeSet& s, SeparationKind kind) {
    return SeparationOracle(g, kind).sets_separated(as, bs, s);
}

SeparationOracle::SeparationOracle(const MixedGraph& g, SeparationKind kind) : kind_(kind), graph_(g) {
    if (kind == SeparationKind::Sigma) scc_ = strongly_connected_components(g);
}

bool SeparationOracle::separated(NodeId a, NodeId b, const NodeSet& s) const {
    check_node(graph_, a);
    check_node(graph_, b);
    return separated_by_rules(Rules(graph_, s, scc_ ? &*scc_ : nullptr), a, b);
}

bool SeparationOracle::sets_separated(const NodeSet& as, const NodeSet& bs, const NodeSet& s) const {
    const Rules r(graph_, s, scc_ ? &*scc_ : nullptr);
    if (graph_.has_undirected_edges()) {
        for (NodeId a : as)
            for (NodeId b : bs)
                if (!separated_by_rules(r, a, b)) return false;
        return true;
    }
    return !walk_reachable(r, as - s).intersects(bs - s);
}

}  // namespace groupcausal
