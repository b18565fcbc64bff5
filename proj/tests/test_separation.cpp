#include <doctest.h>

#include "generators.hpp"
#include "groupcausal/error.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/separation.hpp"
#include "groupcausal/subsets.hpp"
#include "oracles.hpp"

using namespace groupcausal;

namespace {

constexpr auto D = EdgeKind::Directed;
constexpr auto Bi = EdgeKind::Bidirected;
constexpr auto U = EdgeKind::Undirected;

MixedGraph sigma_example() {
    return build_graph({"A", "B", "C", "D"}, {{"A", D, "B"}, {"B", D, "C"}, {"C", D, "B"}, {"D", D, "C"}});
}

MixedGraph dsep_ii() {
    return build_graph({"W", "Y1", "Y2", "Y3", "Z"},
                       {{"W", D, "Y1"}, {"Y1", D, "Y2"}, {"Y3", D, "Y2"}, {"Y3", D, "Z"}});
}

oracle::Kind okind(SeparationKind k) { return k == SeparationKind::M ? oracle::Kind::M : oracle::Kind::Sigma; }

}  // namespace

TEST_CASE("is_blocked examples") {
    const auto g = dsep_ii();
    const Walk w{{0, 1, 2, 3, 4}, {Step::Forward, Step::Forward, Step::Backward, Step::Forward}};
    auto r = is_blocked(g, w, {}, SeparationKind::M);
    CHECK(r.blocked);
    REQUIRE(r.witness);
    CHECK(r.witness->index == 2);
    CHECK(r.witness->reason == BlockReason::ColliderNoDescendantInS);

    const auto ab = build_graph({"A", "B"}, {{"A", D, "B"}});
    CHECK_FALSE(is_blocked(ab, Walk{{0, 1}, {Step::Forward}}, {}, SeparationKind::M).blocked);
    CHECK_FALSE(is_blocked(ab, Walk{{0, 1}, {Step::Forward}}, {}, SeparationKind::Sigma).blocked);
    r = is_blocked(ab, Walk{{0, 1}, {Step::Forward}}, {1}, SeparationKind::Sigma);
    CHECK(r.blocked);
    CHECK(r.witness->reason == BlockReason::EndpointInS);

    // A -> B -> C <- D with B conditioned: B's outgoing edge stays inside its cycle
    const auto s = sigma_example();
    const Walk abcd{{0, 1, 2, 3}, {Step::Forward, Step::Forward, Step::Backward}};
    CHECK_FALSE(is_blocked(s, abcd, {1}, SeparationKind::Sigma).blocked);
    r = is_blocked(s, abcd, {1}, SeparationKind::M);
    CHECK(r.blocked);
    CHECK(r.witness->reason == BlockReason::NoncolliderInS);
    // B -> C -> ... with C conditioned and an edge leaving the cycle would block under sigma
    const auto out = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"B", D, "A"}, {"B", D, "C"}});
    r = is_blocked(out, Walk{{0, 1, 2}, {Step::Forward, Step::Forward}}, {1}, SeparationKind::Sigma);
    CHECK(r.blocked);
    CHECK(r.witness->reason == BlockReason::SigmaNoncolliderInS);

    CHECK_THROWS_AS(is_blocked(ab, Walk{{0, 1}, {Step::Backward}}, {}, SeparationKind::M), Error);
}

TEST_CASE("separated examples") {
    const auto g = sigma_example();
    const NodeSet bc{1, 2};
    CHECK(separated(g, 0, 3, bc, SeparationKind::M));
    CHECK_FALSE(separated(g, 0, 3, bc, SeparationKind::Sigma));
    CHECK(separated_bruteforce(g, 0, 3, bc, SeparationKind::M));
    CHECK_FALSE(separated_bruteforce(g, 0, 3, bc, SeparationKind::Sigma));
    CHECK_FALSE(sigma_via_acyclification(g, 0, 3, bc));
    CHECK(separated(g, 0, 3, {0}, SeparationKind::Sigma));
    CHECK(separated(g, 0, 3, {3}, SeparationKind::M));
    CHECK(separated(dsep_ii(), 0, 4, {}, SeparationKind::M));

    const auto chain = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"B", D, "C"}});
    CHECK(reachability_separated(chain, 0, 2, {1}));
    CHECK_FALSE(reachability_separated(chain, 0, 2, {}));
    const auto coll = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"C", D, "B"}});
    CHECK_FALSE(reachability_separated(coll, 0, 2, {1}));
    CHECK(reachability_separated(coll, 0, 2, {}));
    CHECK_THROWS_AS(reachability_separated(g, 0, 3, {}), Error);
    CHECK_THROWS_AS(reachability_separated(build_graph({"A", "B"}, {{"A", U, "B"}}), 0, 1, {}), Error);
}

TEST_CASE("open_path names a path the oracle also finds open") {
    const auto g = sigma_example();
    const auto p = open_path(g, 0, 3, {1, 2}, SeparationKind::Sigma);
    REQUIRE(p);
    CHECK(format_walk(g, *p) == "A -> B -> C <- D");
    CHECK_FALSE(open_path(g, 0, 3, {1, 2}, SeparationKind::M));
}

TEST_CASE("acyclify examples") {
    const auto dag = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"A", Bi, "C"}, {"B", U, "C"}});
    CHECK(acyclify(dag) == dag);

    const auto g = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"B", D, "C"}, {"C", D, "B"}});
    const auto expected = build_graph({"A", "B", "C"}, {{"A", D, "B"}, {"A", D, "C"}, {"B", Bi, "C"}});
    CHECK(acyclify(g) == expected);

    const auto und = build_graph({"A", "B"}, {{"A", U, "B"}});
    CHECK(acyclify(und) == und);

    // undirected edges inside a cycle are replaced by the within-component bidirected edge
    const auto in_scc = build_graph({"A", "B"}, {{"A", D, "B"}, {"B", D, "A"}, {"A", U, "B"}});
    CHECK(acyclify(in_scc) == build_graph({"A", "B"}, {{"A", Bi, "B"}}));
}

TEST_CASE("property: acyclify matches its definition") {
    gen::Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const auto g = gen::graph(rng, {rng.between(1, 8), 0.3, 0.15, 0.1, false});
        const auto a = acyclify(g);
        CHECK(oracle::labelled_edges(a) == oracle::acyclify(g));
        CHECK_FALSE(has_directed_cycle(a));
    }
}

TEST_CASE("property: every engine agrees with the brute-force oracle") {
    gen::Rng rng(22);
    for (int i = 0; i < 120; ++i) {
        const auto g = gen::graph(rng, {rng.between(2, 6), 0.3, 0.15, 0.1, false});
        const auto all = g.all_nodes().to_vector();
        const SeparationOracle om(g, SeparationKind::M), os(g, SeparationKind::Sigma);
        for (NodeId a = 0; a < g.size(); ++a)
            for (NodeId b = a + 1; b < g.size(); ++b)
                for_each_subset(all, all.size(), [&](const NodeSet& s) {
                    for (auto kind : {SeparationKind::M, SeparationKind::Sigma}) {
                        const bool truth = oracle::separated(g, a, b, s, okind(kind));
                        CHECK(separated(g, a, b, s, kind) == truth);
                        CHECK(separated_bruteforce(g, a, b, s, kind) == truth);
                        CHECK(separated(g, b, a, s, kind) == truth);
                        CHECK((kind == SeparationKind::M ? om : os).separated(a, b, s) == truth);
                        CHECK(open_path(g, a, b, s, kind).has_value() == !truth);
                    }
                    return true;
                });
    }
}

TEST_CASE("property: the reachability engine handles acyclic inputs directly") {
    gen::Rng rng(23);
    for (int i = 0; i < 150; ++i) {
        const auto g = gen::graph(rng, {rng.between(2, 7), 0.35, 0.15, 0.0, true});
        const auto all = g.all_nodes().to_vector();
        for (NodeId a = 0; a < g.size(); ++a)
            for (NodeId b = a + 1; b < g.size(); ++b)
                for_each_subset(all, 2, [&](const NodeSet& s) {
                    CHECK(reachability_separated(g, a, b, s) == oracle::separated(g, a, b, s, oracle::Kind::M));
                    return true;
                });
    }
}

TEST_CASE("property: sigma and m coincide on acyclic graphs") {
    gen::Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        const auto g = gen::graph(rng, {rng.between(2, 7), 0.35, 0.15, 0.1, true});
        const auto all = g.all_nodes().to_vector();
        for (NodeId a = 0; a < g.size(); ++a)
            for (NodeId b = a + 1; b < g.size(); ++b)
                for_each_subset(all, 3, [&](const NodeSet& s) {
                    CHECK(separated(g, a, b, s, SeparationKind::M) == separated(g, a, b, s, SeparationKind::Sigma));
                    return true;
                });
    }
}

TEST_CASE("sets_separated is all-pairs separation") {
    gen::Rng rng(25);
    for (int i = 0; i < 100; ++i) {
        const auto g = gen::graph(rng, {6, 0.3, 0.15, 0.0, false});
        const NodeSet as{0, 1}, bs{4, 5}, s{2};
        for (auto kind : {SeparationKind::M, SeparationKind::Sigma}) {
            bool all = true;
            for (NodeId a : as)
                for (NodeId b : bs) all = all && separated(g, a, b, s, kind);
            CHECK(sets_separated(g, as, bs, s, kind) == all);
        }
    }
}

TEST_CASE("m_reachable from one source matches pairwise separation") {
    gen::Rng rng(26);
    for (int i = 0; i < 100; ++i) {
        const auto g = gen::graph(rng, {6, 0.3, 0.15, 0.1, false});
        const NodeSet s{3};
        const NodeSet reach = m_reachable(g, NodeSet{0}, s);
        for (NodeId b = 1; b < g.size(); ++b)
            if (!s.contains(b)) CHECK(reach.contains(b) == !oracle::separated(g, 0, b, s, oracle::Kind::M));
    }
}

TEST_CASE("an undirected edge at a collider opens a walk but no path") {
    // A -> B <- C with B -- D: the walk A -> B -- D -- B <- C is open, every path is blocked at B
    const auto g = build_graph({"A", "B", "C", "D"}, {{"A", D, "B"}, {"C", D, "B"}, {"B", U, "D"}});
    CHECK(m_reachable(g, NodeSet{0}, {}).contains(2));
    CHECK(separated(g, 0, 2, {}, SeparationKind::M));
    CHECK(separated(g, 0, 2, {}, SeparationKind::Sigma));
    CHECK(separated_bruteforce(g, 0, 2, {}, SeparationKind::M));
    CHECK(sets_separated(g, NodeSet{0}, NodeSet{2}, {}, SeparationKind::M));
    CHECK_FALSE(separated(g, 0, 2, {1}, SeparationKind::M));
}

TEST_CASE("acyclification loses undirected edges inside a cycle") {
    // V0 <-> V5 -- V1 <- V2 is sigma-open given {V3}; acyclify turns V5 -- V1 into V5 <-> V1, closing it
    const auto g = build_graph({"V0", "V1", "V2", "V3", "V4", "V5", "V6"},
                               {{"V0", D, "V4"}, {"V0", Bi, "V5"}, {"V1", D, "V4"}, {"V1", D, "V5"}, {"V1", Bi, "V5"},
                                {"V1", U, "V5"}, {"V2", D, "V1"}, {"V2", D, "V3"}, {"V2", D, "V4"}, {"V2", U, "V6"},
                                {"V3", D, "V0"}, {"V3", D, "V1"}, {"V3", D, "V2"}, {"V4", D, "V1"}, {"V5", D, "V4"},
                                {"V6", D, "V1"}, {"V6", D, "V3"}});
    const NodeSet s{g.id("V3")};
    const auto v0 = g.id("V0"), v2 = g.id("V2");
    CHECK_FALSE(oracle::separated(g, v0, v2, s, oracle::Kind::Sigma));
    CHECK_FALSE(separated(g, v0, v2, s, SeparationKind::Sigma));
    CHECK(sigma_via_acyclification(g, v0, v2, s));
    const auto p = open_path(g, v0, v2, s, SeparationKind::Sigma);
    REQUIRE(p);
    CHECK(format_walk(g, *p) == "V0 <-> V5 -- V1 <- V2");
}

TEST_CASE("property: sigma equals m on the acyclification when undirected edges cross components") {
    gen::Rng rng(27);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        const auto g = gen::graph(rng, {rng.between(2, 6), 0.3, 0.15, 0.1, false});
        const auto scc = strongly_connected_components(g);
        bool inner_undirected = false;
        for (const auto& e : g.edges()) inner_undirected |= e.kind == U && scc.same(e.from, e.to);
        if (inner_undirected) continue;
        ++checked;
        const auto all = g.all_nodes().to_vector();
        for (NodeId a = 0; a < g.size(); ++a)
            for (NodeId b = a + 1; b < g.size(); ++b)
                for_each_subset(all, all.size(), [&](const NodeSet& s) {
                    CHECK(sigma_via_acyclification(g, a, b, s) == separated(g, a, b, s, SeparationKind::Sigma));
                    return true;
                });
    }
    CHECK(checked > 100);
}
