#include "groupcausal/random.hpp"

#include <algorithm>
#include <numeric>

#include "groupcausal/error.hpp"

namespace groupcausal {

std::string node_label(std::size_t i) {
    std::string l(1, static_cast<char>('A' + i % 26));
    if (i >= 26) l += std::to_string(i / 26);
    return l;
}

MixedGraph random_graph(Rng& rng, const RandomGraphOptions& opt) {
    GraphBuilder b;
    for (std::size_t i = 0; i < opt.nodes; ++i) b.add_node(node_label(i));
    std::vector<NodeId> order(opt.nodes);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> rank(opt.nodes);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::bernoulli_distribution directed(opt.p_directed), bidirected(opt.p_bidirected), undirected(opt.p_undirected);
    for (NodeId a = 0; a < opt.nodes; ++a) {
        for (NodeId c = 0; c < opt.nodes; ++c) {
            if (a == c) continue;
            if (opt.acyclic && rank[a] > rank[c]) continue;
            if (directed(rng)) b.add_edge(a, EdgeKind::Directed, c);
        }
    }
    for (NodeId a = 0; a < opt.nodes; ++a) {
        for (NodeId c = a + 1; c < opt.nodes; ++c) {
            if (bidirected(rng)) b.add_edge(a, EdgeKind::Bidirected, c);
            if (undirected(rng)) b.add_edge(a, EdgeKind::Undirected, c);
        }
    }
    return std::move(b).build();
}

Partition random_partition(Rng& rng, const MixedGraph& g, std::size_t groups) {
    if (groups == 0 || groups > g.size())
        throw Error(ErrorCode::InvalidArgument, "cannot split " + std::to_string(g.size()) + " nodes into " +
                                                    std::to_string(groups) + " non-empty groups");
    std::vector<NodeId> order(g.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<NodeSet> blocks(groups);
    std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
    for (std::size_t i = 0; i < order.size(); ++i) blocks[i < groups ? i : pick(rng)].insert(order[i]);
    std::sort(blocks.begin(), blocks.end(), [](const NodeSet& a, const NodeSet& b) { return *a.begin() < *b.begin(); });
    std::vector<std::string> labels;
    for (std::size_t y = 0; y < groups; ++y) labels.push_back("G" + std::to_string(y));
    return Partition::from_sets(g.size(), std::move(labels), std::move(blocks));
}

}  // namespace groupcausal
