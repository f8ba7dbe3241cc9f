#pragma once

// Minor containment with explicit minor models, plus the planarity and
// apex-style predicates built on it.
//
// The search walks the contraction lattice of G one contracted edge per level,
// keeping one representative per isomorphism class, and at each level asks for
// a subgraph embedding of H. Every minor is a subgraph of some contraction, so
// exhausting the levels down to |V(H)| vertices decides containment. The branch
// sets of the surviving representative form the witness.

#include <algorithm>
#include <cstddef>
#include <list>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace knotscan {

/// A minor model of H in G: branch_sets[v] is the set of G-vertices contracted
/// onto H-vertex v.
struct MinorWitness {
    std::vector<VertexMask> branch_sets;

    bool operator==(const MinorWitness&) const = default;
};

/// Local certificate check, independent of any search.
inline bool verify_witness(const Graph& g, const Graph& h, const MinorWitness& w) {
    if (static_cast<int>(w.branch_sets.size()) != h.order()) return false;
    VertexMask used = 0;
    for (VertexMask b : w.branch_sets) {
        if (!b || (b & ~g.vertices()) || (b & used)) return false;
        if (!is_connected_set(g, b)) return false;
        used |= b;
    }
    for (const Edge& e : h.edges()) {
        VertexMask touch = 0;
        for_each_bit(w.branch_sets[static_cast<std::size_t>(e.u)], [&](int x) { touch |= g.neighbors(x); });
        if (!(touch & w.branch_sets[static_cast<std::size_t>(e.v)])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Subgraph embedding (not necessarily induced)

namespace detail {

class Embedder {
public:
    Embedder(const Graph& pattern, const Graph& target) : p_(pattern), t_(target) {
        const int n = p_.order();
        order_.reserve(static_cast<std::size_t>(n));
        VertexMask placed = 0;
        while (static_cast<int>(order_.size()) < n) {
            int best = -1;
            int best_links = -1;
            for (int v = 0; v < n; ++v) {
                if (placed & bit(v)) continue;
                const int links = popcount(p_.neighbors(v) & placed);
                if (links > best_links || (links == best_links && p_.degree(v) > p_.degree(best))) {
                    best = v;
                    best_links = links;
                }
            }
            order_.push_back(best);
            placed |= bit(best);
        }
        image_.assign(static_cast<std::size_t>(n), -1);
    }

    std::optional<std::vector<int>> run() {
        if (p_.order() > t_.order() || p_.size() > t_.size()) return std::nullopt;
        const auto dp = degree_sequence(p_);
        const auto dt = degree_sequence(t_);
        for (std::size_t i = 0; i < dp.size(); ++i)
            if (dp[i] > dt[i]) return std::nullopt;
        if (extend(0, 0)) return image_;
        return std::nullopt;
    }

private:
    bool extend(std::size_t depth, VertexMask used) {
        if (depth == order_.size()) return true;
        const int v = order_[depth];
        VertexMask cand = t_.vertices() & ~used;
        for_each_bit(p_.neighbors(v), [&](int w) {
            const int x = image_[static_cast<std::size_t>(w)];
            if (x >= 0) cand &= t_.neighbors(x);
        });
        const int need = p_.degree(v);
        while (cand) {
            const int x = std::countr_zero(cand);
            cand &= cand - 1;
            if (t_.degree(x) < need) continue;
            image_[static_cast<std::size_t>(v)] = x;
            if (extend(depth + 1, used | bit(x))) return true;
        }
        image_[static_cast<std::size_t>(v)] = -1;
        return false;
    }

    const Graph& p_;
    const Graph& t_;
    std::vector<int> order_;
    std::vector<int> image_;
};

}  // namespace detail

/// Injective map from pattern vertices to target vertices preserving adjacency.
inline std::optional<std::vector<int>> find_subgraph_embedding(const Graph& pattern, const Graph& target) {
    return detail::Embedder(pattern, target).run();
}

// ---------------------------------------------------------------------------
// Contraction-lattice search

struct MinorSearchStats {
    std::size_t contractions_examined = 0;
    std::size_t levels = 0;
};

inline std::optional<MinorWitness> find_minor(const Graph& g, const Graph& h, MinorSearchStats* stats = nullptr) {
    const int nh = h.order();
    const int mh = h.size();
    if (nh == 0) return MinorWitness{};
    if (nh > g.order() || mh > g.size()) return std::nullopt;

    struct Node {
        Graph quotient;
        std::vector<VertexMask> branch;
    };
    std::vector<Node> level;
    {
        std::vector<VertexMask> singletons(static_cast<std::size_t>(g.order()));
        for (int v = 0; v < g.order(); ++v) singletons[static_cast<std::size_t>(v)] = bit(v);
        level.push_back({g, std::move(singletons)});
    }
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    for (int depth = 0;; ++depth) {
        if (stats) {
            stats->levels = static_cast<std::size_t>(depth) + 1;
            stats->contractions_examined += level.size();
        }
        for (const Node& node : level) {
            if (auto image = find_subgraph_embedding(h, node.quotient)) {
                MinorWitness w;
                w.branch_sets.reserve(static_cast<std::size_t>(nh));
                for (int x : *image) w.branch_sets.push_back(node.branch[static_cast<std::size_t>(x)]);
                return w;
            }
        }
        if (level.empty() || level.front().quotient.order() <= nh) return std::nullopt;
        std::vector<Node> next;
        seen.clear();
        for (const Node& node : level) {
            for (const Edge& e : node.quotient.edges()) {
                Graph child = contract_edge(node.quotient, e);
                if (child.size() < mh) continue;
                if (!seen.insert(canonical_key(child)).second) continue;
                std::vector<VertexMask> branch = node.branch;
                branch[static_cast<std::size_t>(e.u)] |= branch[static_cast<std::size_t>(e.v)];
                branch.erase(branch.begin() + e.v);
                next.push_back({std::move(child), std::move(branch)});
            }
        }
        level = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Memo table keyed by the canonical forms of (G, H)

/// Bounded LRU memo of minor queries. Witnesses are stored in canonical
/// coordinates so a hit can be replayed onto any relabeling of the pair.
class MinorCache {
public:
    explicit MinorCache(std::size_t capacity = std::size_t{1} << 20) : capacity_(capacity) {}

    struct Key {
        CanonicalKey g;
        CanonicalKey h;
        bool operator==(const Key&) const = default;
    };

    std::optional<std::optional<MinorWitness>> lookup(const Key& key) {
        std::lock_guard lock(mutex_);
        auto it = index_.find(key);
        if (it == index_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        entries_.splice(entries_.begin(), entries_, it->second);
        return it->second->second;
    }

    void store(const Key& key, std::optional<MinorWitness> value) {
        std::lock_guard lock(mutex_);
        if (capacity_ == 0) return;
        if (auto it = index_.find(key); it != index_.end()) {
            it->second->second = std::move(value);
            entries_.splice(entries_.begin(), entries_, it->second);
            return;
        }
        entries_.emplace_front(key, std::move(value));
        index_.emplace(key, entries_.begin());
        while (index_.size() > capacity_) {
            index_.erase(entries_.back().first);
            entries_.pop_back();
        }
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return index_.size();
    }

    std::size_t hits() const {
        std::lock_guard lock(mutex_);
        return hits_;
    }

    std::size_t misses() const {
        std::lock_guard lock(mutex_);
        return misses_;
    }

    void clear() {
        std::lock_guard lock(mutex_);
        entries_.clear();
        index_.clear();
    }

private:
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            CanonicalKeyHash h;
            return h(k.g) * 31 + h(k.h);
        }
    };

    using Entry = std::pair<Key, std::optional<MinorWitness>>;

    std::size_t capacity_;
    std::list<Entry> entries_;
    std::unordered_map<Key, std::list<Entry>::iterator, KeyHash> index_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
    mutable std::mutex mutex_;
};

inline MinorCache& default_minor_cache() {
    static MinorCache cache;
    return cache;
}

namespace detail {

inline VertexMask map_mask(VertexMask m, std::span<const int> to) {
    VertexMask out = 0;
    for_each_bit(m, [&](int v) { out |= bit(to[static_cast<std::size_t>(v)]); });
    return out;
}

}  // namespace detail

/// Returns a minor model of h in g, or nothing when h is not a minor of g.
inline std::optional<MinorWitness> has_minor(const Graph& g, const Graph& h, MinorCache& cache = default_minor_cache()) {
    if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
    const CanonicalForm cg = canonical_form(g);
    const CanonicalForm ch = canonical_form(h);
    const MinorCache::Key key{cg.key, ch.key};
    const std::vector<int> g_order = canonical_order(cg);
    if (auto hit = cache.lookup(key)) {
        if (!*hit) return std::nullopt;
        MinorWitness w;
        w.branch_sets.resize(static_cast<std::size_t>(h.order()));
        for (int v = 0; v < h.order(); ++v)
            w.branch_sets[static_cast<std::size_t>(v)] =
                detail::map_mask((*hit)->branch_sets[static_cast<std::size_t>(ch.position[static_cast<std::size_t>(v)])], g_order);
        return w;
    }
    auto found = find_minor(g, h);
    if (!found) {
        cache.store(key, std::nullopt);
        return std::nullopt;
    }
    MinorWitness canon;
    canon.branch_sets.resize(static_cast<std::size_t>(h.order()));
    for (int v = 0; v < h.order(); ++v)
        canon.branch_sets[static_cast<std::size_t>(ch.position[static_cast<std::size_t>(v)])] =
            detail::map_mask(found->branch_sets[static_cast<std::size_t>(v)], cg.position);
    cache.store(key, std::move(canon));
    return found;
}

// ---------------------------------------------------------------------------
// Exhaustive delete/contract reduction (cross-check route)

class ReductionLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every minor of g (up to isomorphism) with at least floor_n vertices and
/// floor_m edges, found by memoized single-step deletions and contractions.
inline std::unordered_set<CanonicalKey, CanonicalKeyHash> minors_by_reduction(const Graph& g, int floor_n = 0, int floor_m = 0,
                                                                              std::size_t state_cap = std::size_t{1} << 20) {
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    std::vector<Graph> stack;
    auto push = [&](const Graph& x) {
        if (x.order() < floor_n || x.size() < floor_m) return;
        if (!seen.insert(canonical_key(x)).second) return;
        if (seen.size() > state_cap) throw ReductionLimitError("minor reduction exceeded its state cap");
        stack.push_back(x);
    };
    push(g);
    while (!stack.empty()) {
        Graph x = std::move(stack.back());
        stack.pop_back();
        for (int v = 0; v < x.order(); ++v) push(delete_vertex(x, v));
        for (const Edge& e : x.edges()) {
            push(delete_edge(x, e));
            push(contract_edge(x, e));
        }
    }
    return seen;
}

inline bool has_minor_by_reduction(const Graph& g, const Graph& h, std::size_t state_cap = std::size_t{1} << 20) {
    if (h.order() > g.order() || h.size() > g.size()) return false;
    return minors_by_reduction(g, h.order(), h.size(), state_cap).contains(canonical_key(h));
}

// ---------------------------------------------------------------------------
// Planarity via Wagner's theorem

inline const Graph& k5_graph() {
    static const Graph g = complete_graph(5);
    return g;
}

inline const Graph& k33_graph() {
    static const Graph g = complete_multipartite({3, 3}).graph;
    return g;
}

/// Removes vertices of degree at most one and suppresses degree-two vertices;
/// the result is planar exactly when the input is.
inline Graph planarity_kernel(Graph g) {
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < g.order(); ++v) {
            const int d = g.degree(v);
            if (d <= 1) {
                g = delete_vertex(g, v);
                changed = true;
                break;
            }
            if (d == 2) {
                const int x = std::countr_zero(g.neighbors(v));
                const int y = 63 - std::countl_zero(g.neighbors(v));
                g = g.adjacent(x, y) ? delete_vertex(g, v) : contract_edge(g, Edge(v, x));
                changed = true;
                break;
            }
        }
    }
    return g;
}

inline bool is_planar(const Graph& input, MinorCache& cache = default_minor_cache()) {
    if (input.order() <= 4) return true;
    if (input.size() > 3 * input.order() - 6) return false;
    const Graph g = planarity_kernel(input);
    if (g.order() <= 4) return true;
    if (g.size() > 3 * g.order() - 6) return false;
    return !has_minor(g, k5_graph(), cache) && !has_minor(g, k33_graph(), cache);
}

/// Lowest vertex whose deletion leaves a planar graph.
inline std::optional<int> apex_vertex(const Graph& g, MinorCache& cache = default_minor_cache()) {
    for (int v = 0; v < g.order(); ++v)
        if (is_planar(delete_vertex(g, v), cache)) return v;
    return std::nullopt;
}

/// Lexicographically first pair whose deletion leaves a planar graph.
inline std::optional<std::pair<int, int>> planar_pair(const Graph& g, MinorCache& cache = default_minor_cache()) {
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (is_planar(delete_vertices(g, bit(u) | bit(v)), cache)) return std::pair{u, v};
    return std::nullopt;
}

}  // namespace knotscan
