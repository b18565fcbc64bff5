#include "groupcausal/faithfulness.hpp"

#include <algorithm>
#include <thread>

#include "groupcausal/error.hpp"
#include "groupcausal/random.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/subsets.hpp"

namespace groupcausal {

std::string_view to_string(Condition c) noexcept {
    switch (c) {
        case Condition::II: return "ii";
        case Condition::III: return "iii";
        case Condition::IIIa: return "iii-a";
        case Condition::IIIb: return "iii-b";
        case Condition::IIIc: return "iii-c";
        case Condition::IIId: return "iii-d";
    }
    return "?";
}

std::string_view to_string(ViolationClass c) noexcept {
    switch (c) {
        case ViolationClass::Adjacency: return "ADJACENCY";
        case ViolationClass::Local: return "LOCAL";
        case ViolationClass::Nonlocal: return "NONLOCAL";
    }
    return "?";
}

std::size_t FaithfulnessReport::count(ViolationClass c) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [c](const Violation& v) { return v.cls == c; }));
}

EdgeBoundary edge_boundary(const MixedGraph& g, const Partition& p, const MacroEdge& e) {
    p.check_against(g);
    if (e.from >= p.size() || e.to >= p.size() || e.from == e.to)
        throw Error(ErrorCode::NoSuchMacroEdge, "macro edge names an unknown group");
    EdgeBoundary b{e, {}, {}, {}};
    for (const Edge& m : g.edges()) {
        if (m.kind != e.kind) continue;
        const GroupId gf = p.group_of(m.from);
        const GroupId gt = p.group_of(m.to);
        NodeId src = 0, dst = 0;
        if (gf == e.from && gt == e.to) {
            src = m.from;
            dst = m.to;
        } else if (e.kind != EdgeKind::Directed && gf == e.to && gt == e.from) {
            src = m.to;
            dst = m.from;
        } else {
            continue;
        }
        b.micro_edges.push_back(m);
        b.source_boundary.insert(src);
        b.target_boundary.insert(dst);
    }
    if (b.micro_edges.empty())
        throw Error(ErrorCode::NoSuchMacroEdge, "coarse graph has no edge " + p.label(e.from) + " " +
                                                    std::string(to_string(e.kind)) + " " + p.label(e.to));
    return b;
}

namespace {

// A macro edge seen from one of its endpoint groups.
struct Incidence {
    MacroEdge edge;
    bool head_here = false;
    NodeSet boundary;  // boundary inside the group
};

std::vector<std::vector<Incidence>> incidences(const MixedGraph& g, const Partition& p, const MixedGraph& coarse) {
    std::vector<std::vector<Incidence>> out(p.size());
    for (const Edge& ce : coarse.edges()) {
        const MacroEdge e{ce.from, ce.kind, ce.to};
        const EdgeBoundary b = edge_boundary(g, p, e);
        const bool sym_head = ce.kind == EdgeKind::Bidirected;
        out[ce.from].push_back({e, sym_head, b.source_boundary});
        out[ce.to].push_back({e, ce.kind != EdgeKind::Undirected, b.target_boundary});
    }
    return out;
}

std::optional<CriterionFailure> check_sccs_in_blocks(const Partition& p, const SccIndex& scc) {
    for (const NodeSet& comp : scc.components) {
        const GroupId home = p.group_of(*comp.begin());
        for (NodeId v : comp)
            if (p.group_of(v) != home) return CriterionFailure{Condition::II, std::nullopt, std::nullopt, p.group_of(v), v};
    }
    return std::nullopt;
}

// Nodes of `block` reachable from v by directed paths inside the block, v included.
NodeSet reach_within(const MixedGraph& g, const NodeSet& block, NodeId v, bool forward) {
    NodeSet seen{v};
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : forward ? g.children(u) : g.parents(u)) {
            if (block.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    return seen;
}

GroupId far_end(const MacroEdge& e, GroupId y) { return e.from == y ? e.to : e.from; }

CriterionReport finish(const MixedGraph& coarse, std::optional<CriterionFailure> failure) {
    CriterionReport r;
    r.passed = !failure.has_value();
    r.failure = std::move(failure);
    r.coarse_acyclic = !has_directed_cycle(coarse);
    return r;
}

}  // namespace

CriterionReport check_criterion1(const MixedGraph& g, const Partition& p) {
    const MixedGraph coarse = coarsen(g, p);
    const SccIndex scc = strongly_connected_components(g);
    if (auto f = check_sccs_in_blocks(p, scc)) return finish(coarse, f);
    const auto inc = incidences(g, p, coarse);
    for (GroupId y = 0; y < p.size(); ++y) {
        for (const Incidence& in : inc[y]) {
            for (const Incidence& out : inc[y]) {
                if (in.edge == out.edge) continue;
                for (NodeId v : in.boundary) {
                    const bool partner = std::any_of(out.boundary.begin(), out.boundary.end(),
                                                     [&](NodeId w) { return scc.same(v, w); });
                    if (!partner) return finish(coarse, CriterionFailure{Condition::III, in.edge, out.edge, y, v});
                }
            }
        }
    }
    return finish(coarse, std::nullopt);
}

CriterionReport check_criterion2(const MixedGraph& g, const Partition& p) {
    const MixedGraph coarse = coarsen(g, p);
    const SccIndex scc = strongly_connected_components(g);
    if (auto f = check_sccs_in_blocks(p, scc)) return finish(coarse, f);
    const auto inc = incidences(g, p, coarse);
    for (GroupId y = 0; y < p.size(); ++y) {
        const NodeSet& block = p.block(y);
        std::vector<NodeSet> down(g.size()), up(g.size());
        for (NodeId v : block) {
            down[v] = reach_within(g, block, v, true);
            up[v] = reach_within(g, block, v, false);
        }
        for (const Incidence& in : inc[y]) {
            for (const Incidence& out : inc[y]) {
                if (in.edge == out.edge || far_end(in.edge, y) == far_end(out.edge, y)) continue;
                auto fail = [&](Condition c, std::optional<NodeId> node) {
                    return finish(coarse, CriterionFailure{c, in.edge, out.edge, y, node});
                };
                if (in.head_here && out.head_here) {
                    if (!in.boundary.intersects(out.boundary)) return fail(Condition::IIId, std::nullopt);
                } else if (in.head_here) {
                    for (NodeId v : in.boundary)
                        if (!down[v].intersects(out.boundary)) return fail(Condition::IIIa, v);
                } else if (out.head_here) {
                    for (NodeId v : out.boundary)
                        if (!down[v].intersects(in.boundary)) return fail(Condition::IIIb, v);
                } else {
                    for (NodeId v : in.boundary) {
                        const bool ok = std::any_of(up[v].begin(), up[v].end(),
                                                    [&](NodeId root) { return down[root].intersects(out.boundary); });
                        if (!ok) return fail(Condition::IIIc, v);
                    }
                }
            }
        }
    }
    return finish(coarse, std::nullopt);
}

bool group_separated(const MixedGraph& g, const Partition& p, GroupId y, GroupId z, const NodeSet& s,
                     SeparationKind kind) {
    return sets_separated(g, p.block(y), p.block(z), p.members(s), kind);
}

namespace {

struct Cell {
    GroupId y, z;
    NodeSet s;
};

ViolationClass classify_with(const MixedGraph& coarse, const Partition& p, const SeparationOracle& micro,
                             GroupId y, GroupId z) {
    if (coarse.adjacent(y).contains(z)) return ViolationClass::Adjacency;
    const NodeSet middles = coarse.adjacent(y) & coarse.adjacent(z);
    for (NodeId x : middles) {
        std::vector<NodeId> pool;
        for (NodeId w = 0; w < p.size(); ++w)
            if (w != y && w != z && w != x) pool.push_back(w);
        const bool local = !for_each_subset(pool, pool.size(), [&](const NodeSet& s) {
            const NodeSet t = p.members(s);
            const bool both = micro.sets_separated(p.block(y), p.block(z), t) &&
                              micro.sets_separated(p.block(y), p.block(z), t | p.block(x));
            return !both;
        });
        if (local) return ViolationClass::Local;
    }
    return ViolationClass::Nonlocal;
}

}  // namespace

FaithfulnessReport find_faithfulness_violations(const MixedGraph& g, const Partition& p, SeparationKind kind,
                                                std::size_t max_cond, unsigned jobs) {
    p.check_against(g);
    if (p.size() >= 2 && max_cond > p.size() - 2)
        throw Error(ErrorCode::InvalidArgument, "conditioning size " + std::to_string(max_cond) + " exceeds " +
                                                    std::to_string(p.size() - 2) + " available groups");
    const MixedGraph coarse = coarsen(g, p);
    const SeparationOracle macro(coarse, kind);
    const SeparationOracle micro(g, kind);

    std::vector<Cell> cells;
    for (GroupId y = 0; y < p.size(); ++y) {
        for (GroupId z = y + 1; z < p.size(); ++z) {
            std::vector<NodeId> pool;
            for (NodeId w = 0; w < p.size(); ++w)
                if (w != y && w != z) pool.push_back(w);
            for_each_subset(pool, max_cond, [&](const NodeSet& s) {
                cells.push_back({y, z, s});
                return true;
            });
        }
    }

    std::vector<char> hit(cells.size(), 0);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Cell& c = cells[i];
            if (macro.separated(c.y, c.z, c.s)) continue;
            hit[i] = micro.sets_separated(p.block(c.y), p.block(c.z), p.members(c.s)) ? 1 : 0;
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(jobs, cells.size()));
    if (threads <= 1) {
        work(0, cells.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cells.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk, e = std::min(cells.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    FaithfulnessReport r;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!hit[i]) continue;
        r.violations.push_back({cells[i].y, cells[i].z, cells[i].s, kind,
                                classify_with(coarse, p, micro, cells[i].y, cells[i].z)});
    }
    return r;
}

ViolationClass classify_violation(const MixedGraph& g, const Partition& p, const Violation& v) {
    p.check_against(g);
    return classify_with(coarsen(g, p), p, SeparationOracle(g, v.kind), std::min(v.y, v.z), std::max(v.y, v.z));
}

std::vector<OrientationFailure> orientation_failures(const MixedGraph& g, const Partition& p, SeparationKind kind) {
    const MixedGraph coarse = coarsen(g, p);
    const SeparationOracle micro(g, kind);
    std::vector<OrientationFailure> out;
    for (GroupId y = 0; y < p.size(); ++y) {
        const NodeSet adj = coarse.adjacent(y);
        for (NodeId x : adj) {
            for (NodeId z : adj) {
                if (z <= x || coarse.adjacent(x).contains(z)) continue;
                const bool collider = (coarse.has_edge(x, EdgeKind::Directed, y) || coarse.has_edge(x, EdgeKind::Bidirected, y)) &&
                                      (coarse.has_edge(z, EdgeKind::Directed, y) || coarse.has_edge(z, EdgeKind::Bidirected, y));
                std::vector<NodeId> pool;
                for (NodeId w = 0; w < p.size(); ++w)
                    if (w != x && w != z) pool.push_back(w);
                for_each_subset(pool, pool.size(), [&](const NodeSet& s) {
                    if (s.contains(y) != collider) return true;
                    if (!micro.sets_separated(p.block(x), p.block(z), p.members(s))) return true;
                    out.push_back({x, y, z, collider, s});
                    return false;
                });
            }
        }
    }
    return out;
}

bool apparent_cause(const MixedGraph& coarse, NodeId y, NodeId z) {
    if (y >= coarse.size() || z >= coarse.size()) throw Error(ErrorCode::UnknownGroup, "group index outside the graph");
    return descendants_of_set(coarse, coarse.children(y)).contains(z);
}

bool true_cause(const MixedGraph& g, const Partition& p, GroupId y, GroupId z) {
    p.check_against(g);
    if (y >= p.size() || z >= p.size()) throw Error(ErrorCode::UnknownGroup, "group index outside the partition");
    return descendants_of_set(g, p.block(y)).intersects(p.block(z));
}

bool apparent_cause(const MixedGraph& coarse, const std::string& y, const std::string& z) {
    const auto a = coarse.find(y), b = coarse.find(z);
    if (!a) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + y + "'");
    if (!b) throw Error(ErrorCode::UnknownGroup, "no group labelled '" + z + "'");
    return apparent_cause(coarse, *a, *b);
}

bool true_cause(const MixedGraph& g, const Partition& p, const std::string& y, const std::string& z) {
    return true_cause(g, p, p.id(y), p.id(z));
}

std::optional<NonlocalInstance> search_nonlocal_instance(std::uint64_t seed, const NonlocalSearchBounds& bounds) {
    if (bounds.groups < 2 || bounds.max_nodes < bounds.groups)
        throw Error(ErrorCode::InvalidArgument, "search bounds admit no partition");
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> size(bounds.groups, bounds.max_nodes);
    std::uniform_real_distribution<double> density(0.1, 0.35);
    const std::size_t max_cond = std::min(bounds.max_cond, bounds.groups - 2);
    for (std::size_t attempt = 0; attempt < bounds.attempts; ++attempt) {
        RandomGraphOptions opt;
        opt.nodes = size(rng);
        opt.p_directed = density(rng);
        opt.p_bidirected = 0.0;
        opt.acyclic = true;
        MixedGraph g = random_graph(rng, opt);
        Partition p = random_partition(rng, g, bounds.groups);
        FaithfulnessReport r = find_faithfulness_violations(g, p, SeparationKind::Sigma, max_cond);
        if (r.empty() || r.count(ViolationClass::Nonlocal) != r.violations.size()) continue;
        if (has_directed_cycle(coarsen(g, p)) || !orientation_failures(g, p, SeparationKind::Sigma).empty()) continue;
        return NonlocalInstance{std::move(g), std::move(p), std::move(r), attempt};
    }
    return std::nullopt;
}

}  // namespace groupcausal
