#include "groupcausal/walk.hpp"

#include "groupcausal/error.hpp"

namespace groupcausal {

bool Walk::is_collider(std::size_t i) const {
    if (i == 0 || i + 1 >= nodes.size()) return false;
    return head_at_end(steps[i - 1]) && head_at_start(steps[i]);
}

bool Walk::is_path() const {
    NodeSet seen;
    for (NodeId v : nodes) {
        if (seen.contains(v)) return false;
        seen.insert(v);
    }
    return true;
}

bool Walk::is_directed() const {
    for (Step s : steps)
        if (s != Step::Forward) return false;
    return true;
}

Walk Walk::reversed() const {
    Walk r;
    r.nodes.assign(nodes.rbegin(), nodes.rend());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back(flip(*it));
    return r;
}

bool step_exists(const MixedGraph& g, NodeId from, Step s, NodeId to) {
    switch (s) {
        case Step::Forward: return g.has_edge(from, EdgeKind::Directed, to);
        case Step::Backward: return g.has_edge(to, EdgeKind::Directed, from);
        case Step::Bidirected: return g.has_edge(from, EdgeKind::Bidirected, to);
        case Step::Undirected: return g.has_edge(from, EdgeKind::Undirected, to);
    }
    return false;
}

void validate(const MixedGraph& g, const Walk& w) {
    if (w.nodes.empty()) throw Error(ErrorCode::InvalidWalk, "walk has no nodes");
    if (w.steps.size() + 1 != w.nodes.size()) throw Error(ErrorCode::InvalidWalk, "walk has mismatched step count");
    for (NodeId v : w.nodes)
        if (v >= g.size()) throw Error(ErrorCode::InvalidWalk, "walk names a node outside the graph");
    for (std::size_t k = 0; k < w.steps.size(); ++k)
        if (!step_exists(g, w.nodes[k], w.steps[k], w.nodes[k + 1]))
            throw Error(ErrorCode::InvalidWalk,
                        "no edge for step " + std::to_string(k) + " (" + g.label(w.nodes[k]) + ", " +
                            g.label(w.nodes[k + 1]) + ")");
}

std::vector<Step> steps_between(const MixedGraph& g, NodeId from, NodeId to) {
    std::vector<Step> out;
    const EdgeProfile p = g.profile(from, to);
    if (p.forward()) out.push_back(Step::Forward);
    if (p.backward()) out.push_back(Step::Backward);
    if (p.bidirected()) out.push_back(Step::Bidirected);
    if (p.undirected()) out.push_back(Step::Undirected);
    return out;
}

std::string format_walk(const MixedGraph& g, const Walk& w) {
    std::string out = w.nodes.empty() ? std::string() : g.label(w.nodes[0]);
    for (std::size_t k = 0; k < w.steps.size(); ++k) {
        switch (w.steps[k]) {
            case Step::Forward: out += " -> "; break;
            case Step::Backward: out += " <- "; break;
            case Step::Bidirected: out += " <-> "; break;
            case Step::Undirected: out += " -- "; break;
        }
        out += g.label(w.nodes[k + 1]);
    }
    return out;
}

namespace {

struct PathSearch {
    const MixedGraph& g;
    NodeId target;
    const std::function<bool(const Walk&)>& visit;
    Walk current;
    NodeSet on_path;

    // Returns false once the visitor asked to stop.
    bool extend() {
        const NodeId v = current.nodes.back();
        if (v == target) return emit_steps(0);
        for (NodeId w : g.adjacent(v)) {
            if (on_path.contains(w)) continue;
            current.nodes.push_back(w);
            on_path.insert(w);
            const bool go_on = extend();
            on_path.erase(w);
            current.nodes.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

    bool emit_steps(std::size_t k) {
        if (k + 1 == current.nodes.size()) return visit(current);
        for (Step s : steps_between(g, current.nodes[k], current.nodes[k + 1])) {
            current.steps.push_back(s);
            const bool go_on = emit_steps(k + 1);
            current.steps.pop_back();
            if (!go_on) return false;
        }
        return true;
    }
};

}  // namespace

void for_each_path(const MixedGraph& g, NodeId a, NodeId b, const std::function<bool(const Walk&)>& visit,
                   std::size_t node_budget) {
    if (a >= g.size() || b >= g.size()) throw Error(ErrorCode::UnknownNode, "path endpoint outside the graph");
    if (g.size() > node_budget)
        throw Error(ErrorCode::BudgetExceeded, "path enumeration limited to " + std::to_string(node_budget) +
                                                   " nodes, graph has " + std::to_string(g.size()));
    PathSearch search{g, b, visit, Walk{{a}, {}}, NodeSet{a}};
    search.extend();
}

std::vector<Walk> enumerate_paths(const MixedGraph& g, NodeId a, NodeId b, std::size_t node_budget) {
    std::vector<Walk> out;
    for_each_path(
        g, a, b,
        [&](const Walk& w) {
            out.push_back(w);
            return true;
        },
        node_budget);
    return out;
}

}  // namespace groupcausal
