#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "groupcausal/mixed_graph.hpp"

namespace groupcausal {

/// How a walk traverses the edge between nodes[k] and nodes[k+1].
enum class Step : std::uint8_t {
    Forward,     // nodes[k] -> nodes[k+1]
    Backward,    // nodes[k] <- nodes[k+1]
    Bidirected,  // nodes[k] <-> nodes[k+1]
    Undirected,  // nodes[k] -- nodes[k+1]
};

constexpr bool head_at_start(Step s) noexcept { return s == Step::Backward || s == Step::Bidirected; }
constexpr bool head_at_end(Step s) noexcept { return s == Step::Forward || s == Step::Bidirected; }
constexpr Step flip(Step s) noexcept {
    return s == Step::Forward ? Step::Backward : s == Step::Backward ? Step::Forward : s;
}

struct Walk {
    std::vector<NodeId> nodes;
    std::vector<Step> steps;  // nodes.size() - 1 entries

    std::size_t length() const noexcept { return steps.size(); }
    NodeId front() const { return nodes.front(); }
    NodeId back() const { return nodes.back(); }

    /// Inner node i (0 < i < last) with arrowheads from both adjacent edges.
    bool is_collider(std::size_t i) const;
    bool is_path() const;
    bool is_directed() const;  // every step Forward
    Walk reversed() const;

    friend bool operator==(const Walk&, const Walk&) = default;
    friend auto operator<=>(const Walk&, const Walk&) = default;
};

/// Whether g contains the edge a step describes.
bool step_exists(const MixedGraph& g, NodeId from, Step s, NodeId to);

/// Throws Error(InvalidWalk) unless every step names an edge of g.
void validate(const MixedGraph& g, const Walk& w);

/// Steps available between an ordered pair, in Step order.
std::vector<Step> steps_between(const MixedGraph& g, NodeId from, NodeId to);

/// "A -> B <-> C"
std::string format_walk(const MixedGraph& g, const Walk& w);

constexpr std::size_t kDefaultPathBudget = 12;

/// Calls `visit` for each node-distinct walk from a to b in lexicographic node-sequence order, parallel edges in
/// Step order. Enumeration stops early when `visit` returns false. Throws Error(BudgetExceeded) if g has more than
/// `node_budget` nodes, Error(UnknownNode) for bad endpoints.
void for_each_path(const MixedGraph& g, NodeId a, NodeId b, const std::function<bool(const Walk&)>& visit,
                   std::size_t node_budget = kDefaultPathBudget);

std::vector<Walk> enumerate_paths(const MixedGraph& g, NodeId a, NodeId b,
                                  std::size_t node_budget = kDefaultPathBudget);

}  // namespace groupcausal
