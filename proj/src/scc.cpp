#include "groupcausal/scc.hpp"

#include <algorithm>
#include <limits>

namespace groupcausal {

SccIndex strongly_connected_components(const MixedGraph& g) {
    const std::size_t n = g.size();
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::vector<NodeSet> found;
    std::size_t counter = 0;

    // Iterative Tarjan: each frame holds a node and the remaining children to visit.
    struct Frame {
        NodeId v;
        std::vector<NodeId> kids;
        std::size_t next = 0;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> frames;
        auto open = [&](NodeId v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            frames.push_back({v, g.children(v).to_vector()});
        };
        open(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < f.kids.size()) {
                const NodeId w = f.kids[f.next++];
                if (index[w] == kUnset) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const NodeId v = f.v;
            if (low[v] == index[v]) {
                NodeSet comp;
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.insert(w);
                } while (w != v);
                found.push_back(std::move(comp));
            }
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }

    std::sort(found.begin(), found.end(), [](const NodeSet& a, const NodeSet& b) { return *a.begin() < *b.begin(); });
    SccIndex out;
    out.assignment.assign(n, 0);
    for (std::size_t c = 0; c < found.size(); ++c)
        for (NodeId v : found[c]) out.assignment[v] = c;
    out.components = std::move(found);
    return out;
}

bool has_directed_cycle(const MixedGraph& g) { return !strongly_connected_components(g).all_singletons(); }

}  // namespace groupcausal
