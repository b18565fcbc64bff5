#pragma once

#include <cstdint>
#include <random>

#include "groupcausal/grouping.hpp"
#include "groupcausal/mixed_graph.hpp"

namespace groupcausal {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
    std::size_t nodes = 6;
    double p_directed = 0.3;    // per ordered pair
    double p_bidirected = 0.1;  // per unordered pair
    double p_undirected = 0.0;  // per unordered pair
    bool acyclic = false;       // directed edges follow a random topological order
};

/// Nodes are labelled A, B, C, ... (then A1, B1, ... past Z).
MixedGraph random_graph(Rng& rng, const RandomGraphOptions& opt);

/// Uniform assignment to `groups` non-empty blocks labelled G0, G1, ...; requires groups <= node count.
Partition random_partition(Rng& rng, const MixedGraph& g, std::size_t groups);

std::string node_label(std::size_t i);

}  // namespace groupcausal
