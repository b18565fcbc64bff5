#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace groupcausal {

/// Nodes are addressed by their insertion index; the index order is the graph's total node order.
using NodeId = std::uint32_t;

/// Set of node indices stored as a bitset. Iteration is in increasing index order.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> ids) {
        for (NodeId id : ids) insert(id);
    }
    template <typename Range>
    static NodeSet from(const Range& ids) {
        NodeSet s;
        for (auto id : ids) s.insert(static_cast<NodeId>(id));
        return s;
    }

    void insert(NodeId id) {
        const std::size_t w = id / 64;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= bit(id);
    }
    void erase(NodeId id) {
        const std::size_t w = id / 64;
        if (w < words_.size()) words_[w] &= ~bit(id);
    }
    bool contains(NodeId id) const noexcept {
        const std::size_t w = id / 64;
        return w < words_.size() && (words_[w] & bit(id)) != 0;
    }

    bool empty() const noexcept {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    NodeSet& operator|=(const NodeSet& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    NodeSet& operator&=(const NodeSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
        return *this;
    }
    /// Set difference.
    NodeSet& operator-=(const NodeSet& o) {
        const std::size_t n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    bool intersects(const NodeSet& o) const noexcept {
        const std::size_t n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if ((words_[i] & o.words_[i]) != 0) return true;
        return false;
    }
    bool is_subset_of(const NodeSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
            if ((words_[i] & ~other) != 0) return false;
        }
        return true;
    }

    friend bool operator==(const NodeSet& a, const NodeSet& b) noexcept {
        const std::size_t n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.word(i) != b.word(i)) return false;
        return true;
    }
    /// Lexicographic order on the sorted element sequences.
    friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) noexcept {
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end() && ib != b.end(); ++ia, ++ib)
            if (*ia != *ib) return *ia <=> *ib;
        if (ia == a.end() && ib == b.end()) return std::strong_ordering::equal;
        return ia == a.end() ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;
        using pointer = const NodeId*;
        using reference = NodeId;

        const_iterator() = default;
        const_iterator(const NodeSet* set, std::size_t pos) : set_(set), pos_(pos) { seek(); }

        NodeId operator*() const noexcept { return static_cast<NodeId>(pos_); }
        const_iterator& operator++() {
            ++pos_;
            seek();
            return *this;
        }
        const_iterator operator++(int) {
            auto tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(const const_iterator& a, const const_iterator& b) noexcept { return a.pos_ == b.pos_; }

    private:
        void seek() {
            const std::size_t limit = set_->words_.size() * 64;
            while (pos_ < limit) {
                const std::uint64_t rest = set_->words_[pos_ / 64] >> (pos_ % 64);
                if (rest != 0) {
                    pos_ += static_cast<std::size_t>(std::countr_zero(rest));
                    return;
                }
                pos_ = (pos_ / 64 + 1) * 64;
            }
            pos_ = limit;
        }

        const NodeSet* set_ = nullptr;
        std::size_t pos_ = 0;
    };

    const_iterator begin() const { return {this, 0}; }
    const_iterator end() const { return {this, words_.size() * 64}; }

    std::vector<NodeId> to_vector() const { return {begin(), end()}; }

private:
    static std::uint64_t bit(NodeId id) noexcept { return std::uint64_t{1} << (id % 64); }
    std::uint64_t word(std::size_t i) const noexcept { return i < words_.size() ? words_[i] : 0; }

    std::vector<std::uint64_t> words_;
};

}  // namespace groupcausal
