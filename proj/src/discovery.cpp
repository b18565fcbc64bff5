#include "groupcausal/discovery.hpp"

#include <algorithm>
#include <set>

#include "groupcausal/error.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/subsets.hpp"

namespace groupcausal {

namespace {

GroupPair key(GroupId a, GroupId b) { return a < b ? GroupPair{a, b} : GroupPair{b, a}; }

std::vector<NodeId> without(const NodeSet& s, GroupId a, GroupId b) {
    std::vector<NodeId> out;
    for (NodeId v : s)
        if (v != a && v != b) out.push_back(v);
    return out;
}

}  // namespace

GroupCiOracle::GroupCiOracle(MixedGraph g, Partition p, SeparationKind kind)
    : graph_(std::move(g)), partition_(std::move(p)), separation_(graph_, kind) {
    partition_.check_against(graph_);
}

bool GroupCiOracle::independent(GroupId y, GroupId z, const NodeSet& s) const {
    if (y >= groups() || z >= groups()) throw Error(ErrorCode::UnknownGroup, "group index outside the partition");
    for (NodeId w : s)
        if (w >= groups()) throw Error(ErrorCode::UnknownGroup, "conditioning group outside the partition");
    if (y == z || s.contains(y) || s.contains(z))
        throw Error(ErrorCode::InvalidArgument, "queried groups must differ and lie outside the conditioning set");
    return separation_.sets_separated(partition_.block(y), partition_.block(z), partition_.members(s));
}

bool group_ci(const GroupCiOracle& oracle, GroupId y, GroupId z, const NodeSet& s) {
    return oracle.independent(y, z, s);
}

std::vector<GroupPair> Skeleton::edges() const {
    std::vector<GroupPair> out;
    for (GroupId a = 0; a < adjacency.size(); ++a)
        for (NodeId b : adjacency[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

Skeleton pc_skeleton(const GroupCiOracle& oracle) {
    const std::size_t n = oracle.groups();
    Skeleton sk;
    sk.adjacency.assign(n, {});
    for (GroupId a = 0; a < n; ++a)
        for (GroupId b = 0; b < n; ++b)
            if (a != b) sk.adjacency[a].insert(b);

    for (std::size_t level = 0;; ++level) {
        bool any_large = false;
        for (GroupId a = 0; a < n; ++a)
            if (sk.adjacency[a].size() > level) any_large = true;
        if (!any_large) break;
        const std::vector<NodeSet> snapshot = sk.adjacency;
        std::vector<std::pair<GroupPair, NodeSet>> removals;
        for (const GroupPair& e : sk.edges()) {
            const auto [a, b] = e;
            std::optional<NodeSet> found;
            for (const NodeSet* side : {&snapshot[a], &snapshot[b]}) {
                const std::vector<NodeId> pool = without(*side, a, b);
                for_each_subset_of_size(pool, level, [&](const NodeSet& s) {
                    if (!oracle.independent(a, b, s)) return true;
                    found = s;
                    return false;
                });
                if (found) break;
            }
            if (found) removals.emplace_back(e, *found);
        }
        for (auto& [e, s] : removals) {
            sk.adjacency[e.first].erase(e.second);
            sk.adjacency[e.second].erase(e.first);
            sk.sepsets.emplace(e, std::move(s));
        }
    }
    return sk;
}

bool PartiallyOrientedGraph::oriented(GroupId from, GroupId to) const {
    const auto it = marks.find(key(from, to));
    if (it == marks.end()) return false;
    return it->second == (from < to ? Mark::Forward : Mark::Backward);
}

bool PartiallyOrientedGraph::undirected(GroupId a, GroupId b) const {
    const auto it = marks.find(key(a, b));
    return it != marks.end() && it->second == Mark::None;
}

bool PartiallyOrientedGraph::is_ambiguous(GroupId x, GroupId y, GroupId z) const {
    const Triple t{std::min(x, z), y, std::max(x, z)};
    return std::find(ambiguous.begin(), ambiguous.end(), t) != ambiguous.end();
}

namespace {

// Returns false if the edge already carries the opposite orientation.
bool orient(PartiallyOrientedGraph& pog, GroupId from, GroupId to) {
    Mark& m = pog.marks.at(key(from, to));
    const Mark want = from < to ? Mark::Forward : Mark::Backward;
    if (m == Mark::None) m = want;
    return m == want;
}

std::vector<Triple> unshielded_triples(const Skeleton& sk) {
    std::vector<Triple> out;
    for (GroupId y = 0; y < sk.adjacency.size(); ++y)
        for (NodeId x : sk.adjacency[y])
            for (NodeId z : sk.adjacency[y])
                if (x < z && !sk.adjacent(x, z)) out.push_back({x, y, z});
    std::sort(out.begin(), out.end(), [](const Triple& a, const Triple& b) {
        return std::tie(a.x, a.z, a.y) < std::tie(b.x, b.z, b.y);
    });
    return out;
}

}  // namespace

PartiallyOrientedGraph orient_conservative(const Skeleton& skeleton, const GroupCiOracle& oracle) {
    PartiallyOrientedGraph pog;
    pog.skeleton = skeleton;
    for (const GroupPair& e : skeleton.edges()) pog.marks[e] = Mark::None;
    for (const Triple& t : unshielded_triples(skeleton)) {
        std::vector<NodeSet> seps;
        if (auto it = skeleton.sepsets.find(key(t.x, t.z)); it != skeleton.sepsets.end()) seps.push_back(it->second);
        const std::vector<NodeId> pool = without(skeleton.adjacency[t.x] | skeleton.adjacency[t.z], t.x, t.z);
        for_each_subset(pool, pool.size(), [&](const NodeSet& s) {
            if (oracle.independent(t.x, t.z, s)) seps.push_back(s);
            return true;
        });
        const auto with_y = std::count_if(seps.begin(), seps.end(), [&](const NodeSet& s) { return s.contains(t.y); });
        if (with_y == 0) {
            pog.colliders.push_back(t);
        } else if (static_cast<std::size_t>(with_y) == seps.size()) {
            pog.noncolliders.push_back(t);
        } else {
            pog.ambiguous.push_back(t);
        }
    }
    for (const Triple& t : pog.colliders) {
        const bool ok_x = orient(pog, t.x, t.y);
        const bool ok_z = orient(pog, t.z, t.y);
        if (!ok_x || !ok_z) pog.conflicts.push_back(t);
    }
    return pog;
}

PartiallyOrientedGraph meek_rule1(PartiallyOrientedGraph pog) {
    const Skeleton& sk = pog.skeleton;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GroupPair& e : sk.edges()) {
            for (const auto& [a, b] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
                if (!pog.oriented(a, b)) continue;
                for (NodeId c : sk.adjacency[b]) {
                    if (c == a || sk.adjacent(a, c) || !pog.undirected(b, c)) continue;
                    if (pog.is_ambiguous(a, b, c)) continue;
                    orient(pog, b, c);
                    changed = true;
                }
            }
        }
    }
    return pog;
}

DiffReport compare_to_truth(const PartiallyOrientedGraph& pog, const Partition& groups, const MixedGraph& truth) {
    if (truth.size() != groups.size())
        throw Error(ErrorCode::GroupSetMismatch, "truth graph has " + std::to_string(truth.size()) + " groups, pattern has " +
                                                     std::to_string(groups.size()));
    std::vector<NodeId> to_truth;
    for (const auto& l : groups.labels()) {
        const auto v = truth.find(l);
        if (!v) throw Error(ErrorCode::GroupSetMismatch, "group '" + l + "' missing from truth graph");
        to_truth.push_back(*v);
    }
    DiffReport d;
    for (GroupId a = 0; a < groups.size(); ++a) {
        for (GroupId b = a + 1; b < groups.size(); ++b) {
            const bool in_out = pog.skeleton.adjacent(a, b);
            const bool in_truth = truth.adjacent(to_truth[a]).contains(to_truth[b]);
            if (in_out && !in_truth) d.false_positives.emplace_back(a, b);
            if (!in_out && in_truth) d.false_negatives.emplace_back(a, b);
            if (!in_out) continue;
            if (pog.oriented(a, b) && !truth.has_edge(to_truth[a], EdgeKind::Directed, to_truth[b]))
                d.wrong_orientations.emplace_back(a, b);
            if (pog.oriented(b, a) && !truth.has_edge(to_truth[b], EdgeKind::Directed, to_truth[a]))
                d.wrong_orientations.emplace_back(b, a);
        }
    }
    d.ambiguous = pog.ambiguous;
    return d;
}

SigmaAwareResult sigma_aware_check(const PartiallyOrientedGraph& pog, const GroupCiOracle& oracle) {
    const std::vector<GroupPair> edges = pog.skeleton.edges();
    if (edges.size() > 16)
        throw Error(ErrorCode::BudgetExceeded, "orientation search limited to 16 skeleton edges");
    const std::size_t n = oracle.groups();

    // Oracle answers for every pair and conditioning set, computed once.
    struct Query {
        GroupId a, b;
        NodeSet s;
        bool independent;
    };
    std::vector<Query> queries;
    for (GroupId a = 0; a < n; ++a) {
        for (GroupId b = a + 1; b < n; ++b) {
            const std::vector<NodeId> pool = without(oracle.partition().all_groups(), a, b);
            for_each_subset(pool, pool.size(), [&](const NodeSet& s) {
                queries.push_back({a, b, s, oracle.independent(a, b, s)});
                return true;
            });
        }
    }

    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
        GraphBuilder b(oracle.partition().labels());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto [u, v] = edges[i];
            if (mask & (1u << i))
                b.add_edge(v, EdgeKind::Directed, u);
            else
                b.add_edge(u, EdgeKind::Directed, v);
        }
        const MixedGraph dag = std::move(b).build();
        if (has_directed_cycle(dag)) continue;
        auto is_collider = [&](const Triple& t) {
            return dag.has_edge(t.x, EdgeKind::Directed, t.y) && dag.has_edge(t.z, EdgeKind::Directed, t.y);
        };
        if (!std::all_of(pog.colliders.begin(), pog.colliders.end(), is_collider)) continue;
        if (std::any_of(pog.noncolliders.begin(), pog.noncolliders.end(), is_collider)) continue;
        const SeparationOracle dsep(dag, SeparationKind::M);
        const bool faithful = std::all_of(queries.begin(), queries.end(), [&](const Query& q) {
            return dsep.separated(q.a, q.b, q.s) == q.independent;
        });
        if (!faithful) continue;
        SigmaAwareResult r{true, {}};
        for (const Edge& e : dag.edges()) r.dag_edges.emplace_back(e.from, e.to);
        return r;
    }
    return SigmaAwareResult{false, {}};
}

DiscoveryResult discover(const GroupCiOracle& oracle, bool sigma_aware) {
    DiscoveryResult r;
    const PartiallyOrientedGraph pog = orient_conservative(pc_skeleton(oracle), oracle);
    if (sigma_aware) {
        r.sigma_aware = sigma_aware_check(pog, oracle);
        if (!r.sigma_aware->consistent) {
            r.pattern = pog;
            return r;
        }
    }
    r.pattern = meek_rule1(pog);
    return r;
}

}  // namespace groupcausal
