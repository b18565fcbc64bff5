#pragma once

#include <cstddef>
#include <vector>

#include "groupcausal/node_set.hpp"

namespace groupcausal {

/// Visits the k-element subsets of `pool` in lexicographic order of positions. Stops when `visit` returns false;
/// the return value says whether enumeration ran to completion.
template <typename Visit>
bool for_each_subset_of_size(const std::vector<NodeId>& pool, std::size_t k, Visit&& visit) {
    if (k > pool.size()) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        NodeSet s;
        for (std::size_t i : idx) s.insert(pool[i]);
        if (!visit(s)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Subsets of size 0..max_size, by size and then lexicographically.
template <typename Visit>
bool for_each_subset(const std::vector<NodeId>& pool, std::size_t max_size, Visit&& visit) {
    for (std::size_t k = 0; k <= max_size && k <= pool.size(); ++k)
        if (!for_each_subset_of_size(pool, k, visit)) return false;
    return true;
}

}  // namespace groupcausal
