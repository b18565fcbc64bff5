#include <doctest.h>

#include "generators.hpp"
#include "groupcausal/discovery.hpp"
#include "groupcausal/faithfulness.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/text_format.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace groupcausal;
using support::code_of;

namespace {

constexpr auto D = EdgeKind::Directed;

GroupCiOracle make_oracle(std::vector<std::string> labels, std::vector<EdgeSpec> edges,
                          std::vector<std::pair<std::string, std::vector<std::string>>> blocks,
                          SeparationKind kind = SeparationKind::Sigma) {
    auto g = build_graph(std::move(labels), edges);
    auto p = Partition::from_labels(g, blocks);
    return GroupCiOracle(std::move(g), std::move(p), kind);
}

GroupCiOracle fixture_oracle(const std::string& name, SeparationKind kind = SeparationKind::Sigma) {
    auto parsed = parse_graph(read_file(std::string(FIXTURE_DIR) + "/" + name), name);
    auto p = Partition::from_labels(parsed.graph, parsed.groups);
    return GroupCiOracle(std::move(parsed.graph), std::move(p), kind);
}

GroupId gid(const GroupCiOracle& o, const std::string& label) {
    const auto& l = o.partition().labels();
    return static_cast<GroupId>(std::find(l.begin(), l.end(), label) - l.begin());
}

NodeSet gset(const GroupCiOracle& o, std::initializer_list<const char*> labels) {
    NodeSet s;
    for (const char* l : labels) s.insert(gid(o, l));
    return s;
}

// Two-node strongly connected blocks, so every crossing edge has partners on both sides.
GroupCiOracle blocks_of_two(std::vector<std::pair<std::string, std::string>> macro) {
    std::vector<std::string> labels;
    std::vector<EdgeSpec> edges;
    std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
    std::set<std::string> seen;
    for (const auto& [a, b] : macro)
        for (const auto& x : {a, b})
            if (seen.insert(x).second) {
                labels.push_back(x + "1");
                labels.push_back(x + "2");
                edges.push_back({x + "1", D, x + "2"});
                edges.push_back({x + "2", D, x + "1"});
                blocks.push_back({x, {x + "1", x + "2"}});
            }
    for (const auto& [a, b] : macro) edges.push_back({a + "2", D, b + "1"});
    return make_oracle(labels, edges, blocks);
}

MixedGraph truth_of(const GroupCiOracle& o) { return coarsen(o.graph(), o.partition()); }

}  // namespace

TEST_CASE("group ci examples") {
    const auto disconnected = make_oracle({"A", "B"}, {}, {{"A", {"A"}}, {"B", {"B"}}});
    CHECK(group_ci(disconnected, 0, 1, {}));

    const auto chain = blocks_of_two({{"A", "B"}, {"B", "C"}});
    CHECK_FALSE(group_ci(chain, gid(chain, "A"), gid(chain, "C"), {}));
    CHECK(group_ci(chain, gid(chain, "A"), gid(chain, "C"), gset(chain, {"B"})));

    const auto ii = fixture_oracle("dsep_ii.mg");
    CHECK(group_ci(ii, gid(ii, "W"), gid(ii, "Z"), {}));
    CHECK(apparent_cause(truth_of(ii), "W", "Z"));

    CHECK(code_of([&] { group_ci(chain, 0, 7, {}); }) == ErrorCode::UnknownGroup);
    CHECK(code_of([&] { group_ci(chain, 0, 1, {9}); }) == ErrorCode::UnknownGroup);
    CHECK(code_of([&] { group_ci(chain, 1, 1, {}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { group_ci(chain, 0, 1, {1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("pc skeleton examples") {
    const auto empty = make_oracle({"A", "B", "C"}, {}, {{"A", {"A"}}, {"B", {"B"}}, {"C", {"C"}}});
    const Skeleton none = pc_skeleton(empty);
    CHECK(none.edges().empty());
    CHECK(none.sepsets.size() == 3);
    for (const auto& [pair, s] : none.sepsets) CHECK(s.empty());

    const auto chain = blocks_of_two({{"A", "B"}, {"B", "C"}});
    const Skeleton sk = pc_skeleton(chain);
    CHECK(sk.edges() == std::vector<GroupPair>{{0, 1}, {1, 2}});
    CHECK(sk.sepsets.at({0, 2}) == gset(chain, {"B"}));

    // The W - Z adjacency implied by the coarse path disappears.
    const auto ii = fixture_oracle("dsep_ii.mg");
    const Skeleton skii = pc_skeleton(ii);
    CHECK_FALSE(skii.adjacent(gid(ii, "W"), gid(ii, "Z")));
    CHECK(skii.sepsets.at({std::min(gid(ii, "W"), gid(ii, "Z")), std::max(gid(ii, "W"), gid(ii, "Z"))}).empty());
}

TEST_CASE("conservative orientation examples") {
    const auto collider = blocks_of_two({{"A", "C"}, {"B", "C"}});
    const auto pog = orient_conservative(pc_skeleton(collider), collider);
    const GroupId a = gid(collider, "A"), b = gid(collider, "B"), c = gid(collider, "C");
    CHECK(pog.colliders == std::vector<Triple>{{a, c, b}});
    CHECK(pog.oriented(a, c));
    CHECK(pog.oriented(b, c));
    CHECK(pog.ambiguous.empty());
    CHECK(pog.conflicts.empty());

    const auto chain = blocks_of_two({{"A", "B"}, {"B", "C"}});
    const auto pc = orient_conservative(pc_skeleton(chain), chain);
    CHECK(pc.colliders.empty());
    CHECK(pc.noncolliders == std::vector<Triple>{{0, 1, 2}});
    CHECK(pc.undirected(0, 1));
    CHECK(pc.undirected(1, 2));

    const auto ii = fixture_oracle("dsep_ii.mg");
    const auto pii = orient_conservative(pc_skeleton(ii), ii);
    CHECK(pii.ambiguous.size() == 1);
    CHECK(pii.is_ambiguous(gid(ii, "W"), gid(ii, "Y"), gid(ii, "Z")));
}

TEST_CASE("non-local violations are invisible to conservative marking") {
    const auto o = fixture_oracle("nonlocal_found.mg");
    const auto fr = find_faithfulness_violations(o.graph(), o.partition(), SeparationKind::Sigma, 2);
    REQUIRE_FALSE(fr.empty());
    CHECK(fr.count(ViolationClass::Nonlocal) == fr.violations.size());

    const auto r = discover(o);
    CHECK(r.pattern.ambiguous.empty());
    CHECK(r.pattern.conflicts.empty());
    // The skeleton keeps every true adjacency and marks nothing as suspect, so the missing independence of the
    // violation goes unnoticed: the pattern claims G2 and G3 are connected given G0.
    const DiffReport d = compare_to_truth(r.pattern, o.partition(), truth_of(o));
    CHECK(d.empty());
    const auto& v = fr.violations.front();
    CHECK(group_ci(o, v.y, v.z, v.conditioning));

    // The exhaustive DAG check does notice it.
    const auto aware = discover(o, true);
    REQUIRE(aware.sigma_aware);
    CHECK_FALSE(aware.sigma_aware->consistent);
}

TEST_CASE("meek rule 1 examples") {
    PartiallyOrientedGraph pog;
    pog.skeleton.adjacency = {{1}, {0, 2}, {1}};
    pog.marks = {{{0, 1}, Mark::Forward}, {{1, 2}, Mark::None}};
    const auto out = meek_rule1(pog);
    CHECK(out.oriented(1, 2));

    PartiallyOrientedGraph bare = pog;
    bare.marks[{0, 1}] = Mark::None;
    CHECK(meek_rule1(bare) == bare);

    PartiallyOrientedGraph shielded = pog;
    shielded.skeleton.adjacency = {{1, 2}, {0, 2}, {0, 1}};
    shielded.marks[{0, 2}] = Mark::None;
    CHECK(meek_rule1(shielded) == shielded);

    PartiallyOrientedGraph marked = pog;
    marked.ambiguous = {{0, 1, 2}};
    CHECK(meek_rule1(marked) == marked);

    // Propagates along a chain to fixpoint.
    PartiallyOrientedGraph longer;
    longer.skeleton.adjacency = {{1}, {0, 2}, {1, 3}, {2}};
    longer.marks = {{{0, 1}, Mark::Forward}, {{1, 2}, Mark::None}, {{2, 3}, Mark::None}};
    const auto lo = meek_rule1(longer);
    CHECK(lo.oriented(1, 2));
    CHECK(lo.oriented(2, 3));
}

TEST_CASE("meek rule 1 misorients a cyclic coarse graph") {
    const auto o = fixture_oracle("meek_cyclic.mg");
    const MixedGraph truth = truth_of(o);
    const GroupId u = gid(o, "U"), q = gid(o, "Q"), y = gid(o, "Y"), v = gid(o, "V");
    REQUIRE(has_directed_cycle(truth));
    CHECK(truth.has_edge(*truth.find("U"), D, *truth.find("Y")));
    CHECK(truth.has_edge(*truth.find("Y"), D, *truth.find("U")));

    // Q and V are sigma-connected given Y in the coarse graph yet independent.
    CHECK_FALSE(separated(truth, *truth.find("Q"), *truth.find("V"), {*truth.find("Y")}, SeparationKind::Sigma));
    CHECK(group_ci(o, q, v, {y}));

    const auto pog = orient_conservative(pc_skeleton(o), o);
    CHECK(pog.colliders == std::vector<Triple>{{std::min(u, q), y, std::max(u, q)}});
    CHECK(pog.is_ambiguous(q, y, v));
    CHECK(pog.undirected(y, v));

    const auto after = meek_rule1(pog);
    CHECK(after.oriented(y, v));
    const DiffReport d = compare_to_truth(after, o.partition(), truth);
    CHECK(d.false_positives.empty());
    CHECK(d.false_negatives.empty());
    CHECK(d.wrong_orientations == std::vector<GroupPair>{{y, v}});
    CHECK(d.ambiguous.size() == 1);

    const auto aware = discover(o, true);
    REQUIRE(aware.sigma_aware);
    CHECK_FALSE(aware.sigma_aware->consistent);
    CHECK(aware.pattern == pog);
}

TEST_CASE("compare to truth") {
    const auto chain = blocks_of_two({{"A", "B"}, {"B", "C"}});
    const auto r = discover(chain);
    CHECK(compare_to_truth(r.pattern, chain.partition(), truth_of(chain)).empty());

    // Group order in the truth graph does not matter.
    const auto shuffled = build_graph({"C", "B", "A"}, {{"A", D, "B"}, {"B", D, "C"}});
    CHECK(compare_to_truth(r.pattern, chain.partition(), shuffled).empty());

    const auto extra = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"B", D, "C"}, {"A", D, "C"}});
    const auto dx = compare_to_truth(r.pattern, chain.partition(), extra);
    CHECK(dx.false_negatives == std::vector<GroupPair>{{0, 2}});

    const auto sparse = build_graph({"A", "B", "C"}, {{"A", D, "B"}});
    CHECK(compare_to_truth(r.pattern, chain.partition(), sparse).false_positives == std::vector<GroupPair>{{1, 2}});

    const auto collider = blocks_of_two({{"A", "C"}, {"B", "C"}});
    const auto rc = discover(collider);
    const auto reversed = build_graph({"A", "B", "C"}, {{"C", D, "A"}, {"B", D, "C"}});
    const auto dr = compare_to_truth(rc.pattern, collider.partition(), reversed);
    CHECK(dr.wrong_orientations == std::vector<GroupPair>{{gid(collider, "A"), gid(collider, "C")}});

    const auto ii = fixture_oracle("dsep_ii.mg");
    CHECK_FALSE(compare_to_truth(discover(ii).pattern, ii.partition(), truth_of(ii)).empty());

    CHECK(code_of([&] { compare_to_truth(r.pattern, chain.partition(), build_graph({"A", "B"}, {})); }) ==
          ErrorCode::GroupSetMismatch);
    CHECK(code_of([&] { compare_to_truth(r.pattern, chain.partition(), build_graph({"A", "B", "X"}, {})); }) ==
          ErrorCode::GroupSetMismatch);
}

TEST_CASE("sigma-aware check") {
    const auto collider = blocks_of_two({{"A", "C"}, {"B", "C"}});
    const auto r = discover(collider, true);
    REQUIRE(r.sigma_aware);
    CHECK(r.sigma_aware->consistent);
    CHECK(r.sigma_aware->dag_edges.size() == 2);
    CHECK(r.pattern == discover(collider).pattern);
}

TEST_CASE("property: group ci is symmetric and matches the micro oracle") {
    gen::Rng rng(601);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = rng.between(2, 6);
        const auto g = gen::graph(rng, {n, 0.3, 0.15, 0.0, false});
        const auto p = gen::partition(rng, n, rng.between(2, std::min<std::size_t>(n, 4)));
        const GroupCiOracle o(g, p, trial % 2 ? SeparationKind::M : SeparationKind::Sigma);
        const auto kind = trial % 2 ? oracle::Kind::M : oracle::Kind::Sigma;
        for (GroupId y = 0; y < p.size(); ++y)
            for (GroupId z = y + 1; z < p.size(); ++z) {
                std::vector<NodeId> pool;
                for (GroupId w = 0; w < p.size(); ++w)
                    if (w != y && w != z) pool.push_back(w);
                for (const NodeSet& s : oracle::subsets(pool, pool.size())) {
                    const bool fwd = group_ci(o, y, z, s);
                    CHECK(fwd == group_ci(o, z, y, s));
                    CHECK(fwd == oracle::group_independent(g, p, y, z, s, kind));
                }
            }
    }
}

TEST_CASE("property: skeleton drops exactly the separable pairs") {
    gen::Rng rng(602);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = rng.between(2, 7);
        const auto g = gen::graph(rng, {n, 0.3, 0.1, 0.0, false});
        const auto p = gen::partition(rng, n, rng.between(2, std::min<std::size_t>(n, 5)));
        const GroupCiOracle o(g, p, SeparationKind::Sigma);
        const Skeleton sk = pc_skeleton(o);
        for (GroupId y = 0; y < p.size(); ++y)
            for (GroupId z = y + 1; z < p.size(); ++z) {
                const auto it = sk.sepsets.find({y, z});
                CHECK(sk.adjacent(y, z) == (it == sk.sepsets.end()));
                CHECK(sk.adjacent(y, z) == sk.adjacent(z, y));
                if (it != sk.sepsets.end()) {
                    CHECK(oracle::group_independent(g, p, y, z, it->second, oracle::Kind::Sigma));
                } else {
                    // No subset of either final neighbourhood separates an adjacent pair.
                    for (const NodeSet* side : {&sk.adjacency[y], &sk.adjacency[z]}) {
                        std::vector<NodeId> pool;
                        for (NodeId w : *side)
                            if (w != y && w != z) pool.push_back(w);
                        for (const NodeSet& s : oracle::subsets(pool, pool.size()))
                            CHECK_FALSE(oracle::group_independent(g, p, y, z, s, oracle::Kind::Sigma));
                    }
                }
            }
    }
}

TEST_CASE("property: discovery is sound on criterion-passing instances with a DAG of groups") {
    gen::Rng rng(603);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 120; ++trial) {
        auto inst = gen::criterion_biased(rng, 9, 5, 0.0, 0.0);
        if (!check_criterion1(inst.graph, inst.partition).passed) continue;
        const MixedGraph truth = coarsen(inst.graph, inst.partition);
        if (has_directed_cycle(truth)) continue;
        ++checked;
        const GroupCiOracle o(inst.graph, inst.partition, SeparationKind::Sigma);
        const auto r = discover(o);
        const DiffReport d = compare_to_truth(r.pattern, inst.partition, truth);
        CHECK(d.false_positives.empty());
        CHECK(d.false_negatives.empty());
        CHECK(d.wrong_orientations.empty());
        CHECK(d.ambiguous.empty());
        CHECK(r.pattern.conflicts.empty());
        std::vector<Triple> expected;
        for (GroupId y = 0; y < truth.size(); ++y)
            for (NodeId x : truth.parents(y))
                for (NodeId z : truth.parents(y))
                    if (x < z && !truth.adjacent(x).contains(z)) expected.push_back({x, y, z});
        std::sort(expected.begin(), expected.end());
        auto found = r.pattern.colliders;
        std::sort(found.begin(), found.end());
        CHECK(found == expected);
    }
    CHECK(checked >= 50);
}

TEST_CASE("property: discovery is deterministic") {
    gen::Rng rng(604);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = gen::criterion_biased(rng, 8, 4, 0.5);
        const GroupCiOracle a(inst.graph, inst.partition, SeparationKind::Sigma);
        const GroupCiOracle b(inst.graph, inst.partition, SeparationKind::Sigma);
        CHECK(discover(a).pattern == discover(b).pattern);
        CHECK(pc_skeleton(a).sepsets == pc_skeleton(b).sepsets);
    }
}
