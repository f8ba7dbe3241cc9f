#pragma once

// Isomorphism orbits of "complete multipartite minus k edges".

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace knotscan {

struct DeficientCase {
    std::vector<int> parts;
    int k = 0;
    /// Removed edges of the representative, sorted; includes any fixed edges.
    std::vector<Edge> removed;
    /// Edge set in K{...} notation, e.g. "{(a1,b1),(a1,b2)}".
    std::string label;
    Graph graph;
    std::uint64_t orbit_size = 0;
};

class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::string edge_label(const PartLabeling& labels, const Edge& e) {
    return "(" + labels.reference(e.u) + "," + labels.reference(e.v) + ")";
}

inline std::string edge_set_label(const PartLabeling& labels, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    std::string out = "{";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out += ',';
        out += edge_label(labels, edges[i]);
    }
    return out + '}';
}

/// All orbits of removing k edges from the complete multipartite graph on
/// `labels`, `fixed` edges always among them. Subsets are visited in
/// lexicographic order, so the first member seen of each orbit carries the
/// least label.
inline std::vector<DeficientCase> enumerate_deficient(const PartLabeling& labels, int k, std::vector<Edge> fixed = {},
                                                      std::uint64_t cap = 5'000'000) {
    std::vector<int> sizes = labels.sizes();
    const Graph base = complete_multipartite(sizes).graph;
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    for (const Edge& e : fixed)
        if (!base.has_edge(e)) throw GraphError("fixed edge " + edge_label(labels, e) + " is not an edge");
    const int f = static_cast<int>(fixed.size());
    if (k < f) throw GraphError("k is smaller than the number of fixed edges");
    std::vector<Edge> free;
    for (const Edge& e : base.edges())
        if (!std::binary_search(fixed.begin(), fixed.end(), e)) free.push_back(e);
    const int r = k - f;
    if (r > static_cast<int>(free.size())) throw GraphError("cannot remove " + std::to_string(k) + " edges from " +
                                                            std::to_string(base.size()));
    if (binomial(free.size(), static_cast<std::uint64_t>(r)) > cap)
        throw EnumerationLimitError("enumeration of " + std::to_string(k) + "-edge removals exceeds the cap");

    std::vector<DeficientCase> cases;
    std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> index;
    std::vector<int> pick(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<Edge> removed;
    for (;;) {
        removed = fixed;
        for (int i : pick) removed.push_back(free[static_cast<std::size_t>(i)]);
        std::sort(removed.begin(), removed.end());
        Graph g = base.without_edges(removed);
        auto [it, fresh] = index.try_emplace(canonical_key(g), cases.size());
        if (fresh) {
            DeficientCase c;
            c.parts = sizes;
            c.k = k;
            c.removed = removed;
            c.label = edge_set_label(labels, removed);
            c.graph = std::move(g);
            cases.push_back(std::move(c));
        }
        ++cases[it->second].orbit_size;

        int i = r - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(free.size()) - r + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return cases;
}

inline std::vector<DeficientCase> enumerate_deficient(const std::vector<int>& parts, int k, std::vector<Edge> fixed = {}) {
    return enumerate_deficient(PartLabeling(parts), k, std::move(fixed));
}

}  // namespace knotscan
