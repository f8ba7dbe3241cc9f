#pragma once

// Test-only oracles and the shared graph corpus. Nothing here calls the
// canonical-form or minor code under test.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "knotscan/family_lab.hpp"
#include "knotscan/graph.hpp"
#include "knotscan/notation.hpp"

namespace oracle {

using knotscan::Edge;
using knotscan::Graph;

/// Greatest upper-triangle bit string over vertex orders that list degrees in
/// non-increasing order. Exponential; meant for n <= 8.
inline std::string brute_canon(const Graph& g) {
    const int n = g.order();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return std::pair(-g.degree(a), a) < std::pair(-g.degree(b), b); });
    // Permute only within blocks of equal degree.
    std::vector<std::pair<int, int>> blocks;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && g.degree(perm[j]) == g.degree(perm[i])) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }
    std::string best;
    std::string cur(static_cast<std::size_t>(n * (n - 1) / 2), '0');
    auto eval = [&] {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) cur[k++] = g.adjacent(perm[i], perm[j]) ? '1' : '0';
        if (best.empty() || cur > best) best = cur;
    };
    auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == blocks.size()) {
            eval();
            return;
        }
        auto [lo, hi] = blocks[b];
        std::sort(perm.begin() + lo, perm.begin() + hi);
        do self(self, b + 1);
        while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
    };
    rec(rec, 0);
    return std::to_string(n) + ":" + best;
}

inline Graph delete_edge_plain(const Graph& g, int u, int v) {
    std::vector<Edge> es;
    for (const Edge& e : g.edges())
        if (!(e.u == u && e.v == v)) es.push_back(e);
    return Graph(g.order(), es);
}

/// Merges v into u and drops v, renumbering the vertices above v.
inline Graph contract_plain(const Graph& g, int u, int v) {
    auto map = [&](int x) {
        if (x == v) x = u;
        return x > v ? x - 1 : x;
    };
    std::set<std::pair<int, int>> es;
    for (const Edge& e : g.edges()) {
        const int a = map(e.u), b = map(e.v);
        if (a != b) es.emplace(std::min(a, b), std::max(a, b));
    }
    std::vector<Edge> out;
    for (auto [a, b] : es) out.emplace_back(a, b);
    return Graph(g.order() - 1, out);
}

inline Graph drop_isolated_plain(const Graph& g, int v) {
    std::vector<Edge> out;
    for (const Edge& e : g.edges()) out.emplace_back(e.u > v ? e.u - 1 : e.u, e.v > v ? e.v - 1 : e.v);
    return Graph(g.order() - 1, out);
}

/// Every minor of g, up to isomorphism, by exhaustive edge deletion, edge
/// contraction and isolated-vertex deletion. Results are memoized per class.
class MinorOracle {
public:
    const std::set<std::string>& minors(const Graph& g) { return expand(g, brute_canon(g)); }

    bool has_minor(const Graph& g, const Graph& h) { return minors(g).contains(brute_canon(h)); }

private:
    const std::set<std::string>& expand(const Graph& g, const std::string& key) {
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::set<std::string> out{key};
        auto add = [&](const Graph& child) {
            const std::string ck = brute_canon(child);
            const auto& sub = expand(child, ck);
            out.insert(sub.begin(), sub.end());
        };
        for (const Edge& e : g.edges()) {
            add(delete_edge_plain(g, e.u, e.v));
            add(contract_plain(g, e.u, e.v));
        }
        for (int v = 0; v < g.order(); ++v)
            if (g.degree(v) == 0) add(drop_isolated_plain(g, v));
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::map<std::string, std::set<std::string>> memo_;
};

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) es.emplace_back(u, v);
    return Graph(n, es);
}

inline Graph random_relabel(const Graph& g, std::mt19937_64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(g.order()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> es;
    for (const Edge& e : g.edges()) es.emplace_back(perm[e.u], perm[e.v]);
    return Graph(g.order(), es);
}

inline Graph cycle(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, es);
}

inline Graph path(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph(n, es);
}

inline Graph wheel(int rim) {
    std::vector<Edge> es;
    for (int i = 0; i < rim; ++i) {
        es.emplace_back(i, (i + 1) % rim);
        es.emplace_back(i, rim);
    }
    return Graph(rim + 1, es);
}

/// Hand-built labeled test graphs.
inline std::vector<std::pair<std::string, Graph>> named_graphs() {
    std::vector<std::pair<std::string, Graph>> out;
    for (int n = 1; n <= 7; ++n) out.emplace_back("K" + std::to_string(n), knotscan::complete_graph(n));
    for (int n = 3; n <= 7; ++n) out.emplace_back("C" + std::to_string(n), cycle(n));
    for (int n = 2; n <= 6; ++n) out.emplace_back("P" + std::to_string(n), path(n));
    for (int r = 3; r <= 6; ++r) out.emplace_back("W" + std::to_string(r), wheel(r));
    for (const char* s : {"K{2,2}", "K{3,3}", "K{2,2,2}", "K{3,3,1}", "K{3,2,2}", "K{4,3}", "K{3,2,1,1}", "K{2,2,1,1,1}", "K{5,2}",
                          "K{3,3}-(a1,b1)", "K{3,3,1}-(a1,b1)", "K{7}-(a,b)", "K{6}-{(a,b),(c,d)}", "K{4,3}-{(a1,b1),(a2,b2)}"})
        out.emplace_back(s, knotscan::parse_graph(s));
    return out;
}

/// Every table case with at most `max_n` vertices.
inline std::vector<std::pair<std::string, Graph>> table_graphs(int max_n, int n_max = 6) {
    std::vector<std::pair<std::string, Graph>> out;
    for (const std::string& id : knotscan::table_ids())
        for (const auto& r : knotscan::detail::expand_entries(knotscan::load_table(id), n_max))
            for (const auto& c : r.cases)
                if (c.graph.order() <= max_n) out.emplace_back(id + ":" + c.spec + " " + c.label, c.graph);
    return out;
}

/// Graphs on at most seven vertices: named graphs, table cases, and seeded
/// random graphs, deduplicated by the brute-force canonical string.
inline std::vector<std::pair<std::string, Graph>> small_corpus() {
    std::vector<std::pair<std::string, Graph>> all = named_graphs();
    for (auto& x : table_graphs(7)) all.push_back(std::move(x));
    std::mt19937_64 rng(20241);
    for (int i = 0; i < 24; ++i) {
        const int n = 4 + i % 4;
        all.emplace_back("random" + std::to_string(i), random_graph(n, 0.35 + 0.05 * (i % 8), rng));
    }
    std::set<std::string> seen;
    std::vector<std::pair<std::string, Graph>> out;
    for (auto& [name, g] : all)
        if (g.order() <= 7 && seen.insert(brute_canon(g)).second) out.emplace_back(name, g);
    return out;
}

}  // namespace oracle
