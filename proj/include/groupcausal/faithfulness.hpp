#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groupcausal/grouping.hpp"
#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/separation.hpp"

namespace groupcausal {

/// An edge of the coarse graph. Directed edges run from -> to; symmetric kinds have from < to.
struct MacroEdge {
    GroupId from = 0;
    EdgeKind kind = EdgeKind::Directed;
    GroupId to = 0;

    friend auto operator<=>(const MacroEdge&, const MacroEdge&) = default;
};

struct EdgeBoundary {
    MacroEdge macro_edge;
    std::vector<Edge> micro_edges;
    NodeSet source_boundary;  // inside macro_edge.from
    NodeSet target_boundary;  // inside macro_edge.to
};

/// Throws Error(NoSuchMacroEdge) if the coarse graph lacks the edge.
EdgeBoundary edge_boundary(const MixedGraph& g, const Partition& p, const MacroEdge& e);

enum class Condition : std::uint8_t { II, III, IIIa, IIIb, IIIc, IIId };

std::string_view to_string(Condition c) noexcept;  // "ii", "iii", "iii-a", ...

struct CriterionFailure {
    Condition condition = Condition::II;
    std::optional<MacroEdge> e;   // incoming edge of the failing pair, seen from `group`
    std::optional<MacroEdge> e2;  // outgoing edge of the failing pair
    GroupId group = 0;
    std::optional<NodeId> node;   // micro node without a partner
};

struct CriterionReport {
    bool passed = false;
    std::optional<CriterionFailure> failure;
    bool coarse_acyclic = false;
};

/// SCCs inside blocks, and same-SCC partners between the boundaries of every adjacent macro edge pair, including
/// pairs that return to the same group.
CriterionReport check_criterion1(const MixedGraph& g, const Partition& p);

/// SCCs inside blocks, and per-pair mediator / confounder / collider conditions inside the shared group.
/// Only pairs leading to two different groups are checked, so a passing partition may still have a coarse 2-cycle.
/// Undirected edges count as carrying no arrowhead.
CriterionReport check_criterion2(const MixedGraph& g, const Partition& p);

enum class ViolationClass : std::uint8_t { Adjacency, Local, Nonlocal };

std::string_view to_string(ViolationClass c) noexcept;  // "ADJACENCY", "LOCAL", "NONLOCAL"

struct Violation {
    GroupId y = 0;
    GroupId z = 0;  // y < z
    NodeSet conditioning;  // group ids
    SeparationKind kind = SeparationKind::Sigma;
    ViolationClass cls = ViolationClass::Nonlocal;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct FaithfulnessReport {
    std::vector<Violation> violations;  // ordered by (y, z, |S|, S)

    bool empty() const noexcept { return violations.empty(); }
    std::size_t count(ViolationClass c) const;
};

/// Group-level independence read off the micro graph: all pairs of Y x Z separated given the union of s.
bool group_separated(const MixedGraph& g, const Partition& p, GroupId y, GroupId z, const NodeSet& s,
                     SeparationKind kind);

/// Exhaustive search over group pairs and conditioning sets of at most max_cond groups. `jobs` > 1 splits the
/// cells across threads; the result does not depend on it. Throws Error(InvalidArgument) if max_cond exceeds the
/// number of groups minus two.
FaithfulnessReport find_faithfulness_violations(const MixedGraph& g, const Partition& p, SeparationKind kind,
                                                std::size_t max_cond, unsigned jobs = 1);

ViolationClass classify_violation(const MixedGraph& g, const Partition& p, const Violation& v);

struct OrientationFailure {
    GroupId x = 0, y = 0, z = 0;  // unshielded triple, x < z
    bool collider = false;        // (O1) if true, (O2) otherwise
    NodeSet conditioning;
};

/// Unshielded coarse triples whose orientation-faithfulness clause fails under the group oracle.
std::vector<OrientationFailure> orientation_failures(const MixedGraph& g, const Partition& p, SeparationKind kind);

/// Directed coarse path from y to z of length at least one.
bool apparent_cause(const MixedGraph& coarse, NodeId y, NodeId z);
/// Directed micro path from a member of group y to a member of group z.
bool true_cause(const MixedGraph& g, const Partition& p, GroupId y, GroupId z);
bool apparent_cause(const MixedGraph& coarse, const std::string& y, const std::string& z);
bool true_cause(const MixedGraph& g, const Partition& p, const std::string& y, const std::string& z);

struct NonlocalSearchBounds {
    std::size_t max_nodes = 10;
    std::size_t groups = 4;
    std::size_t max_cond = 2;
    std::size_t attempts = 20000;
};

struct NonlocalInstance {
    MixedGraph graph;
    Partition partition;
    FaithfulnessReport report;
    std::size_t attempt = 0;
};

/// Random DAG search for a partition whose coarse graph is a DAG without orientation failures and whose
/// sigma-violation report is non-empty and entirely NONLOCAL.
std::optional<NonlocalInstance> search_nonlocal_instance(std::uint64_t seed, const NonlocalSearchBounds& bounds = {});

}  // namespace groupcausal
