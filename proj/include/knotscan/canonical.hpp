#pragma once

// Canonical labeling by equitable color refinement plus individualization
// backtracking; the canonical form is the lexicographically smallest
// upper-triangle adjacency string over all leaves of the search tree.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace knotscan {

/// Label-free identity of an isomorphism class: vertex count plus the canonical
/// upper-triangle rows. Row i holds bit (n-1-j) for every edge (i,j), j > i, so
/// comparing rows in order compares the row-major bit string.
struct CanonicalKey {
    int n = 0;
    std::vector<VertexMask> rows;

    auto operator<=>(const CanonicalKey&) const = default;
    bool operator==(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        std::size_t h = std::hash<int>{}(k.n);
        for (VertexMask r : k.rows) h ^= std::hash<VertexMask>{}(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct CanonicalForm {
    CanonicalKey key;
    /// position[v] is the canonical position of input vertex v.
    std::vector<int> position;

    int order() const { return key.n; }

    /// Upper triangle, row-major, under the canonical ordering.
    std::string bit_string() const {
        std::string out;
        for (int i = 0; i < key.n; ++i)
            for (int j = i + 1; j < key.n; ++j)
                out += ((key.rows[static_cast<std::size_t>(i)] >> (key.n - 1 - j)) & 1U) ? '1' : '0';
        return out;
    }

    /// The graph in canonical vertex order.
    Graph graph() const {
        std::vector<VertexMask> adj(static_cast<std::size_t>(key.n), 0);
        for (int i = 0; i < key.n; ++i)
            for (int j = i + 1; j < key.n; ++j)
                if ((key.rows[static_cast<std::size_t>(i)] >> (key.n - 1 - j)) & 1U) {
                    adj[static_cast<std::size_t>(i)] |= bit(j);
                    adj[static_cast<std::size_t>(j)] |= bit(i);
                }
        return Graph::from_adjacency(std::move(adj));
    }

    /// Equality is structural; the relabeling is not compared.
    bool operator==(const CanonicalForm& other) const { return key == other.key; }
};

namespace detail {

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.order()) {}

    CanonicalForm run() {
        CanonicalForm out;
        out.key.n = n_;
        if (n_ == 0) return out;
        std::vector<VertexMask> cells{g_.vertices()};
        refine(cells);
        search(cells);
        out.key.rows = best_rows_;
        out.position.assign(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) out.position[static_cast<std::size_t>(best_order_[static_cast<std::size_t>(i)])] = i;
        return out;
    }

private:
    // Splits every cell by neighbor counts into every other cell until stable.
    // Fragments are ordered by ascending count, which keeps the procedure
    // independent of vertex labels.
    void refine(std::vector<VertexMask>& cells) const {
        std::vector<std::pair<int, int>> keyed;
    restart:
        for (std::size_t s = 0; s < cells.size(); ++s) {
            const VertexMask splitter = cells[s];
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const VertexMask cell = cells[i];
                if (popcount(cell) == 1) continue;
                keyed.clear();
                for_each_bit(cell, [&](int v) { keyed.emplace_back(popcount(g_.neighbors(v) & splitter), v); });
                bool uniform = true;
                for (const auto& kv : keyed)
                    if (kv.first != keyed.front().first) { uniform = false; break; }
                if (uniform) continue;
                std::sort(keyed.begin(), keyed.end());
                std::vector<VertexMask> fragments;
                int current = -1;
                for (const auto& [count, v] : keyed) {
                    if (fragments.empty() || count != current) {
                        fragments.push_back(0);
                        current = count;
                    }
                    fragments.back() |= bit(v);
                }
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(i));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(i), fragments.begin(), fragments.end());
                goto restart;
            }
        }
    }

    bool twins(int u, int v) const {
        return (g_.neighbors(u) & ~bit(v)) == (g_.neighbors(v) & ~bit(u));
    }

    void search(const std::vector<VertexMask>& cells) {
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (popcount(cells[i]) > 1) { target = i; break; }
        if (target == cells.size()) {
            evaluate_leaf(cells);
            return;
        }
        // Swapping twins is an automorphism fixing everything individualized so
        // far, so one representative per twin class yields the same leaves.
        std::vector<int> tried;
        for_each_bit(cells[target], [&](int v) {
            for (int u : tried)
                if (twins(u, v)) return;
            tried.push_back(v);
            std::vector<VertexMask> child;
            child.reserve(cells.size() + 1);
            child.insert(child.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
            child.push_back(bit(v));
            child.push_back(cells[target] & ~bit(v));
            child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells.end());
            refine(child);
            search(child);
        });
    }

    void evaluate_leaf(const std::vector<VertexMask>& cells) {
        order_.resize(static_cast<std::size_t>(n_));
        pos_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const int v = std::countr_zero(cells[static_cast<std::size_t>(i)]);
            order_[static_cast<std::size_t>(i)] = v;
            pos_[static_cast<std::size_t>(v)] = i;
        }
        rows_.resize(static_cast<std::size_t>(n_));
        bool better = best_rows_.empty();
        for (int i = 0; i < n_; ++i) {
            VertexMask row = 0;
            for_each_bit(g_.neighbors(order_[static_cast<std::size_t>(i)]), [&](int w) {
                const int j = pos_[static_cast<std::size_t>(w)];
                if (j > i) row |= bit(n_ - 1 - j);
            });
            rows_[static_cast<std::size_t>(i)] = row;
            if (!better) {
                const VertexMask b = best_rows_[static_cast<std::size_t>(i)];
                if (row > b) return;
                if (row < b) better = true;
            }
        }
        if (better) {
            best_rows_ = rows_;
            best_order_ = order_;
        }
    }

    const Graph& g_;
    int n_;
    std::vector<VertexMask> best_rows_;
    std::vector<int> best_order_;
    std::vector<int> order_;
    std::vector<int> pos_;
    std::vector<VertexMask> rows_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) { return detail::Canonizer(g).run(); }

inline CanonicalKey canonical_key(const Graph& g) { return canonical_form(g).key; }

inline bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return false;
    if (degree_sequence(g) != degree_sequence(h)) return false;
    return canonical_key(g) == canonical_key(h);
}

/// Maps a structure expressed in canonical positions back to input vertex ids.
inline std::vector<int> canonical_order(const CanonicalForm& cf) {
    std::vector<int> order(cf.position.size());
    for (std::size_t v = 0; v < cf.position.size(); ++v)
        order[static_cast<std::size_t>(cf.position[v])] = static_cast<int>(v);
    return order;
}

}  // namespace knotscan
