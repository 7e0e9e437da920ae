#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace pmetric {

/// Disjoint-set forest with path compression and union by size.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        std::size_t root = x;
        while (parent_[root] != root)
            root = parent_[root];
        while (parent_[x] != root) {
            std::size_t const next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

    std::size_t size() const noexcept { return parent_.size(); }

    /// Blocks ordered by least member, members ascending.
    std::vector<std::vector<std::size_t>> blocks()
    {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> slot(parent_.size(), parent_.size());
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t const r = find(i);
            if (slot[r] == parent_.size()) {
                slot[r] = out.size();
                out.emplace_back();
            }
            out[slot[r]].push_back(i);
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace pmetric
