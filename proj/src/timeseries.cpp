#include "groupcausal/timeseries.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "groupcausal/error.hpp"

namespace groupcausal {

TsTemplate TsTemplate::make(std::vector<std::string> processes, std::vector<LagEdge> edges) {
    std::set<std::string> seen;
    for (const auto& p : processes)
        if (!seen.insert(p).second) throw Error(ErrorCode::DuplicateLabel, "process '" + p + "' declared twice");
    std::set<LagEdge> unique;
    TsTemplate t;
    for (LagEdge e : edges) {
        if (e.source >= processes.size() || e.target >= processes.size())
            throw Error(ErrorCode::UnknownEndpoint, "lag edge names an undeclared process");
        if (e.kind == EdgeKind::Undirected)
            throw Error(ErrorCode::InvalidArgument, "lag edges are directed or bidirected");
        if (e.lag == 0 && e.source == e.target)
            throw Error(ErrorCode::SelfEdge, "lag-0 self edge at '" + processes[e.source] + "'");
        if (e.kind == EdgeKind::Bidirected && e.lag == 0 && e.target < e.source) std::swap(e.source, e.target);
        if (!unique.insert(e).second)
            throw Error(ErrorCode::DuplicateEdge, "lag edge " + processes[e.source] + " " +
                                                      std::string(to_string(e.kind)) + " " + processes[e.target] +
                                                      " lag " + std::to_string(e.lag) + " given twice");
        t.max_lag_ = std::max(t.max_lag_, e.lag);
    }
    t.processes_ = std::move(processes);
    t.edges_.assign(unique.begin(), unique.end());
    return t;
}

std::size_t TsTemplate::index(const std::string& process) const {
    for (std::size_t i = 0; i < processes_.size(); ++i)
        if (processes_[i] == process) return i;
    throw Error(ErrorCode::UnknownNode, "no process labelled '" + process + "'");
}

std::string ts_label(const std::string& name, int time) { return name + "@" + std::to_string(time); }

NodeId Unrolled::node(std::size_t process, int time) const {
    const std::size_t n = by_process.size();
    return static_cast<NodeId>(static_cast<std::size_t>(time - window.start) * n + process);
}

Unrolled unroll(const TsTemplate& t, const Window& w) {
    if (w.start > w.end)
        throw Error(ErrorCode::EmptyWindow,
                    "window " + std::to_string(w.start) + ":" + std::to_string(w.end) + " contains no time step");
    const std::size_t n = t.size();
    GraphBuilder b;
    for (int s = w.start; s <= w.end; ++s)
        for (const auto& p : t.processes()) b.add_node(ts_label(p, s));
    auto id = [&](std::size_t i, int s) { return static_cast<NodeId>(static_cast<std::size_t>(s - w.start) * n + i); };
    for (const LagEdge& e : t.edges()) {
        for (int s = w.start + static_cast<int>(e.lag); s <= w.end; ++s) {
            const NodeId from = id(e.source, s - static_cast<int>(e.lag));
            const NodeId to = id(e.target, s);
            if (from != to) b.add_edge(from, e.kind, to);
        }
    }
    MixedGraph g = std::move(b).build();
    std::vector<NodeSet> blocks(n);
    for (int s = w.start; s <= w.end; ++s)
        for (std::size_t i = 0; i < n; ++i) blocks[i].insert(id(i, s));
    Partition by_process = Partition::from_sets(g.size(), t.processes(), std::move(blocks));
    return Unrolled{std::move(g), std::move(by_process), w};
}

MixedGraph summary_graph(const TsTemplate& t) {
    GraphBuilder b(t.processes());
    for (const LagEdge& e : t.edges())
        if (e.source != e.target) b.add_edge(static_cast<NodeId>(e.source), e.kind, static_cast<NodeId>(e.target));
    return std::move(b).build();
}

namespace {

void check_process_partition(const TsTemplate& t, const ProcessPartition& q) {
    if (q.node_count() != t.size())
        throw Error(ErrorCode::NotAPartition, "process partition covers " + std::to_string(q.node_count()) +
                                                  " processes, template has " + std::to_string(t.size()));
}

}  // namespace

Partition contemporaneous_partition(const TsTemplate& t, const ProcessPartition& q, const Window& w) {
    check_process_partition(t, q);
    if (w.start > w.end) throw Error(ErrorCode::EmptyWindow, "window contains no time step");
    const std::size_t n = t.size();
    std::vector<std::string> labels;
    std::vector<NodeSet> blocks;
    for (int s = w.start; s <= w.end; ++s) {
        for (GroupId y = 0; y < q.size(); ++y) {
            labels.push_back(ts_label(q.label(y), s));
            NodeSet blk;
            for (NodeId i : q.block(y)) blk.insert(static_cast<NodeId>(static_cast<std::size_t>(s - w.start) * n + i));
            blocks.push_back(std::move(blk));
        }
    }
    return Partition::from_sets(static_cast<std::size_t>(w.length()) * n, std::move(labels), std::move(blocks));
}

Partition group_window_partition(const TsTemplate& t, const ProcessPartition& q, const Window& w) {
    check_process_partition(t, q);
    if (w.start > w.end) throw Error(ErrorCode::EmptyWindow, "window contains no time step");
    const std::size_t n = t.size();
    std::vector<NodeSet> blocks(q.size());
    for (int s = w.start; s <= w.end; ++s)
        for (GroupId y = 0; y < q.size(); ++y)
            for (NodeId i : q.block(y)) blocks[y].insert(static_cast<NodeId>(static_cast<std::size_t>(s - w.start) * n + i));
    return Partition::from_sets(static_cast<std::size_t>(w.length()) * n, q.labels(), std::move(blocks));
}

MixedGraph grouped_ts_dmg(const TsTemplate& t, const ProcessPartition& q, const Window& w) {
    return coarsen(unroll(t, w).graph, contemporaneous_partition(t, q, w));
}

MixedGraph grouped_summary(const TsTemplate& t, const ProcessPartition& q) {
    check_process_partition(t, q);
    return coarsen(summary_graph(t), q);
}

namespace {

// Within-group successor lists: strict uses lag-1 directed edges; relaxed tracks whether a lag >= 1 edge was used.
struct MixingGraph {
    std::size_t n = 0;
    // State s = process * 2 + advanced; edges between states.
    std::vector<std::vector<std::size_t>> next;
};

MixingGraph mixing_graph(const TsTemplate& t, const NodeSet& group, bool strict) {
    MixingGraph m;
    m.n = t.size();
    m.next.assign(2 * m.n, {});
    for (const LagEdge& e : t.edges()) {
        if (e.kind != EdgeKind::Directed) continue;
        if (!group.contains(static_cast<NodeId>(e.source)) || !group.contains(static_cast<NodeId>(e.target))) continue;
        if (strict) {
            if (e.lag != 1) continue;
            for (std::size_t adv = 0; adv < 2; ++adv) m.next[2 * e.source + adv].push_back(2 * e.target + 1);
        } else {
            for (std::size_t adv = 0; adv < 2; ++adv)
                m.next[2 * e.source + adv].push_back(2 * e.target + (e.lag >= 1 ? 1 : adv));
        }
    }
    return m;
}

// Shortest walk of length >= 1 from process i that ends in `target` having used a lag >= 1 edge; empty if none.
std::vector<std::size_t> mixing_walk(const MixingGraph& m, std::size_t i, std::size_t target) {
    std::vector<std::size_t> prev(2 * m.n, SIZE_MAX);
    std::vector<bool> seen(2 * m.n, false);
    std::deque<std::size_t> queue;
    const std::size_t start = 2 * i;
    seen[start] = true;
    queue.push_back(start);
    while (!queue.empty()) {
        const std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t nx : m.next[s]) {
            if (seen[nx]) continue;
            seen[nx] = true;
            prev[nx] = s;
            if (nx == 2 * target + 1) {
                std::vector<std::size_t> walk;
                for (std::size_t c = nx; c != start; c = prev[c]) walk.push_back(c / 2);
                walk.push_back(i);
                std::reverse(walk.begin(), walk.end());
                return walk;
            }
            queue.push_back(nx);
        }
    }
    return {};
}

}  // namespace

MixingReport is_causally_mixing(const TsTemplate& t, const ProcessPartition& q, const MixingOptions& opt) {
    check_process_partition(t, q);
    MixingReport r;
    r.overall = true;
    for (GroupId y = 0; y < q.size(); ++y) {
        const MixingGraph m = mixing_graph(t, q.block(y), opt.strict);
        bool mixes = true;
        for (NodeId i : q.block(y)) {
            for (NodeId k : q.block(y)) {
                if (i == k && !opt.include_self_pairs) continue;
                if (mixing_walk(m, i, k).empty()) mixes = false;
            }
        }
        r.per_group.push_back(mixes);
        r.overall = r.overall && mixes;
    }
    return r;
}

namespace {

void simple_directed_paths(const MixedGraph& coarse, std::vector<GroupId>& path, NodeSet& on_path,
                           std::vector<std::vector<GroupId>>& out) {
    if (path.size() >= 2) out.push_back(path);
    for (NodeId c : coarse.children(path.back())) {
        if (on_path.contains(c)) continue;
        path.push_back(c);
        on_path.insert(c);
        simple_directed_paths(coarse, path, on_path, out);
        on_path.erase(c);
        path.pop_back();
    }
}

// Lowest-lag crossing directed edge from group y to group z, ties by (source, target).
const LagEdge* crossing_edge(const TsTemplate& t, const ProcessPartition& q, GroupId y, GroupId z) {
    const LagEdge* best = nullptr;
    for (const LagEdge& e : t.edges()) {
        if (e.kind != EdgeKind::Directed) continue;
        if (q.group_of(static_cast<NodeId>(e.source)) != y || q.group_of(static_cast<NodeId>(e.target)) != z) continue;
        if (!best || std::tie(e.lag, e.source, e.target) < std::tie(best->lag, best->source, best->target)) best = &e;
    }
    return best;
}

unsigned lag_between(const TsTemplate& t, std::size_t a, std::size_t b, bool strict) {
    unsigned best = UINT32_MAX;
    for (const LagEdge& e : t.edges())
        if (e.kind == EdgeKind::Directed && e.source == a && e.target == b && (!strict || e.lag == 1))
            best = std::min(best, e.lag);
    return best;
}

}  // namespace

std::vector<CausationWitness> check_mixing_causation(const TsTemplate& t, const ProcessPartition& q,
                                                     const MixingOptions& opt) {
    const MixingReport mixing = is_causally_mixing(t, q, opt);
    if (!mixing.overall) {
        for (GroupId y = 0; y < q.size(); ++y)
            if (!mixing.per_group[y]) throw Error(ErrorCode::NotMixing, "group '" + q.label(y) + "' is not causally mixing");
    }
    const MixedGraph coarse = grouped_summary(t, q);
    std::vector<std::vector<GroupId>> paths;
    for (GroupId y = 0; y < q.size(); ++y) {
        std::vector<GroupId> path{y};
        NodeSet on_path{y};
        simple_directed_paths(coarse, path, on_path, paths);
    }

    std::vector<MixingGraph> internal;
    for (GroupId y = 0; y < q.size(); ++y) internal.push_back(mixing_graph(t, q.block(y), opt.strict));

    std::vector<CausationWitness> out;
    for (const auto& path : paths) {
        // Process sequence with the lag of each hop.
        std::vector<std::size_t> procs;
        std::vector<unsigned> lags;
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            const LagEdge* e = crossing_edge(t, q, path[k], path[k + 1]);
            if (k == 0) {
                procs.push_back(e->source);
            } else if (procs.back() != e->source) {
                const auto walk = mixing_walk(internal[path[k]], procs.back(), e->source);
                for (std::size_t j = 1; j < walk.size(); ++j) {
                    lags.push_back(lag_between(t, walk[j - 1], walk[j], opt.strict));
                    procs.push_back(walk[j]);
                }
            }
            lags.push_back(e->lag);
            procs.push_back(e->target);
        }
        int span = 0;
        for (unsigned l : lags) span += static_cast<int>(l);
        const int suggested = static_cast<int>(path.size()) * static_cast<int>(t.max_lag() + t.size()) - 1;
        CausationWitness w;
        w.coarse_path = path;
        w.window = Window{0, std::max(span, suggested)};
        const Unrolled u = unroll(t, w.window);
        int time = 0;
        w.micro_path.nodes.push_back(u.node(procs[0], time));
        for (std::size_t j = 0; j < lags.size(); ++j) {
            time += static_cast<int>(lags[j]);
            w.micro_path.nodes.push_back(u.node(procs[j + 1], time));
            w.micro_path.steps.push_back(Step::Forward);
        }
        try {
            validate(u.graph, w.micro_path);
            w.true_cause = w.micro_path.is_path() && w.micro_path.is_directed() &&
                           q.group_of(static_cast<NodeId>(procs.front())) == path.front() &&
                           q.group_of(static_cast<NodeId>(procs.back())) == path.back();
        } catch (const Error&) {
            w.true_cause = false;
        }
        out.push_back(std::move(w));
    }
    return out;
}

TsFaithfulness ts_faithfulness_check(const TsTemplate& t, const ProcessPartition& q, TsLevel level, const Window& w,
                                     std::size_t max_cond, SeparationKind kind, unsigned jobs) {
    Unrolled u = unroll(t, w);
    Partition p = level == TsLevel::GroupedTs ? contemporaneous_partition(t, q, w) : group_window_partition(t, q, w);
    FaithfulnessReport r = find_faithfulness_violations(u.graph, p, kind, std::min(max_cond, p.size() < 2 ? 0 : p.size() - 2), jobs);
    return TsFaithfulness{std::move(u.graph), std::move(p), std::move(r)};
}

}  // namespace groupcausal
