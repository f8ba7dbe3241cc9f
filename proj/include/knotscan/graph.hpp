#pragma once

// Immutable simple undirected graphs on at most 62 vertices, stored as one
// 64-bit neighbor mask per vertex, plus the local surgery operations used to
// build minors (deletion, contraction, splitting, joins).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotscan {

inline constexpr int max_vertices = 62;

using VertexMask = std::uint64_t;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr VertexMask bit(int v) { return VertexMask{1} << v; }

inline constexpr VertexMask low_mask(int n) {
    return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

inline int popcount(VertexMask m) { return std::popcount(m); }

/// Calls fn(v) for each set bit of m in ascending order.
template <typename Fn>
inline void for_each_bit(VertexMask m, Fn&& fn) {
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        fn(v);
    }
}

struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    auto operator<=>(const Edge&) const = default;
};

class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(check_order(n)), 0) {}

    Graph(int n, std::span<const Edge> edges) : Graph(n) {
        for (const Edge& e : edges) add_edge(e.u, e.v);
    }

    Graph(int n, std::initializer_list<std::pair<int, int>> edges) : Graph(n) {
        for (auto [a, b] : edges) add_edge(a, b);
    }

    /// Builds a graph from symmetric neighbor masks; rejects loops and asymmetry.
    static Graph from_adjacency(std::vector<VertexMask> adj) {
        Graph g(static_cast<int>(adj.size()));
        const VertexMask all = low_mask(g.n_);
        for (int v = 0; v < g.n_; ++v) {
            VertexMask row = adj[static_cast<std::size_t>(v)];
            if (row & ~all) throw GraphError("neighbor outside vertex range");
            if (row & bit(v)) throw GraphError("loop at vertex " + std::to_string(v));
            for_each_bit(row, [&](int w) {
                if (!(adj[static_cast<std::size_t>(w)] & bit(v)))
                    throw GraphError("asymmetric adjacency");
            });
        }
        g.adj_ = std::move(adj);
        return g;
    }

    int order() const { return n_; }

    int size() const {
        int twice = 0;
        for (VertexMask row : adj_) twice += popcount(row);
        return twice / 2;
    }

    VertexMask vertices() const { return low_mask(n_); }

    VertexMask neighbors(int v) const { return adj_[index(v)]; }

    int degree(int v) const { return popcount(adj_[index(v)]); }

    bool adjacent(int u, int v) const { return (adj_[index(u)] >> v) & 1U; }

    bool has_edge(const Edge& e) const {
        return e.u >= 0 && e.v < n_ && e.u != e.v && adjacent(e.u, e.v);
    }

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            for_each_bit(adj_[static_cast<std::size_t>(u)] & ~low_mask(u + 1),
                         [&](int v) { out.emplace_back(u, v); });
        return out;
    }

    std::span<const VertexMask> adjacency() const { return adj_; }

    Graph with_edge(int u, int v) const {
        Graph g = *this;
        g.add_edge(u, v);
        return g;
    }

    Graph without_edges(std::span<const Edge> removed) const {
        Graph g = *this;
        for (const Edge& e : removed) {
            if (!g.has_edge(e))
                throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") is not present");
            g.adj_[static_cast<std::size_t>(e.u)] &= ~bit(e.v);
            g.adj_[static_cast<std::size_t>(e.v)] &= ~bit(e.u);
        }
        return g;
    }

    bool operator==(const Graph&) const = default;

private:
    static int check_order(int n) {
        if (n < 0 || n > max_vertices)
            throw GraphError("vertex count " + std::to_string(n) + " outside 0.." +
                             std::to_string(max_vertices));
        return n;
    }

    std::size_t index(int v) const {
        if (v < 0 || v >= n_) throw GraphError("vertex " + std::to_string(v) + " out of range");
        return static_cast<std::size_t>(v);
    }

    void add_edge(int u, int v) {
        if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
        adj_[index(u)] |= bit(v);
        adj_[index(v)] |= bit(u);
    }

    int n_ = 0;
    std::vector<VertexMask> adj_;
};

inline Graph complete_graph(int n) {
    std::vector<VertexMask> adj(static_cast<std::size_t>(n));
    const VertexMask all = low_mask(n);
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = all & ~bit(v);
    return Graph::from_adjacency(std::move(adj));
}

inline Graph edgeless_graph(int n) { return Graph(n); }

/// Subgraph induced on `keep`, with surviving vertices renumbered in ascending order.
inline Graph induced_subgraph(const Graph& g, VertexMask keep) {
    keep &= g.vertices();
    std::vector<int> new_id(static_cast<std::size_t>(g.order()), -1);
    int next = 0;
    for_each_bit(keep, [&](int v) { new_id[static_cast<std::size_t>(v)] = next++; });
    std::vector<VertexMask> adj(static_cast<std::size_t>(next), 0);
    for_each_bit(keep, [&](int v) {
        VertexMask row = 0;
        for_each_bit(g.neighbors(v) & keep,
                     [&](int w) { row |= bit(new_id[static_cast<std::size_t>(w)]); });
        adj[static_cast<std::size_t>(new_id[static_cast<std::size_t>(v)])] = row;
    });
    return Graph::from_adjacency(std::move(adj));
}

/// Deletes v; vertices above v shift down by one.
inline Graph delete_vertex(const Graph& g, int v) {
    if (v < 0 || v >= g.order()) throw GraphError("vertex " + std::to_string(v) + " out of range");
    return induced_subgraph(g, g.vertices() & ~bit(v));
}

inline Graph delete_vertices(const Graph& g, VertexMask removed) {
    return induced_subgraph(g, g.vertices() & ~removed);
}

inline Graph delete_edge(const Graph& g, const Edge& e) {
    const Edge one[] = {e};
    return g.without_edges(one);
}

/// Merges the endpoints of e into the lower-numbered one, dropping the loop and
/// coalescing parallel edges; the higher endpoint is removed with descending shift.
inline Graph contract_edge(const Graph& g, const Edge& e) {
    if (!g.has_edge(e))
        throw GraphError("cannot contract absent edge (" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + ")");
    std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
    const auto keep = static_cast<std::size_t>(e.u);
    const auto gone = static_cast<std::size_t>(e.v);
    adj[keep] = (adj[keep] | adj[gone]) & ~bit(e.u) & ~bit(e.v);
    for_each_bit(adj[keep], [&](int w) { adj[static_cast<std::size_t>(w)] |= bit(e.u); });
    for_each_bit(adj[gone], [&](int w) { adj[static_cast<std::size_t>(w)] &= ~bit(e.v); });
    adj[gone] = 0;
    return delete_vertex(Graph::from_adjacency(std::move(adj)), e.v);
}

/// Replaces v by an adjacent pair: v keeps the neighbors in `stay`, and a new vertex
/// (id n) takes the neighbors in `move`. Contracting (v, n) gives back g.
inline Graph split_vertex(const Graph& g, int v, VertexMask stay, VertexMask move) {
    const VertexMask nbrs = g.neighbors(v);
    if ((stay | move) != nbrs || (stay & move))
        throw GraphError("split must partition the neighbors of vertex " + std::to_string(v));
    const int n = g.order();
    if (n + 1 > max_vertices) throw GraphError("split exceeds the vertex cap");
    std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
    adj.push_back(0);
    const auto fresh = static_cast<std::size_t>(n);
    for_each_bit(move, [&](int w) {
        adj[static_cast<std::size_t>(w)] = (adj[static_cast<std::size_t>(w)] & ~bit(v)) | bit(n);
    });
    adj[static_cast<std::size_t>(v)] = stay | bit(n);
    adj[fresh] = move | bit(v);
    return Graph::from_adjacency(std::move(adj));
}

/// Disjoint union of g and h plus every edge between them; h's vertices follow g's.
inline Graph join(const Graph& g, const Graph& h) {
    const int ng = g.order();
    const int nh = h.order();
    if (ng + nh > max_vertices)
        throw GraphError("join has " + std::to_string(ng + nh) + " vertices, above the cap of " +
                         std::to_string(max_vertices));
    std::vector<VertexMask> adj(static_cast<std::size_t>(ng + nh));
    const VertexMask g_side = low_mask(ng);
    const VertexMask h_side = low_mask(ng + nh) & ~g_side;
    for (int v = 0; v < ng; ++v) adj[static_cast<std::size_t>(v)] = g.neighbors(v) | h_side;
    for (int v = 0; v < nh; ++v)
        adj[static_cast<std::size_t>(ng + v)] = (h.neighbors(v) << ng) | g_side;
    return Graph::from_adjacency(std::move(adj));
}

inline Graph complement(const Graph& g) {
    std::vector<VertexMask> adj(static_cast<std::size_t>(g.order()));
    const VertexMask all = g.vertices();
    for (int v = 0; v < g.order(); ++v)
        adj[static_cast<std::size_t>(v)] = all & ~g.neighbors(v) & ~bit(v);
    return Graph::from_adjacency(std::move(adj));
}

/// Vertex degrees sorted in descending order.
inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> out(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) out[static_cast<std::size_t>(v)] = g.degree(v);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct Triangle {
    int a = 0;
    int b = 0;
    int c = 0;
    auto operator<=>(const Triangle&) const = default;
};

/// All triangles a < b < c in lexicographic order.
inline std::vector<Triangle> triangles(const Graph& g) {
    std::vector<Triangle> out;
    for (int a = 0; a < g.order(); ++a) {
        const VertexMask up_a = g.neighbors(a) & ~low_mask(a + 1);
        for_each_bit(up_a, [&](int b) {
            for_each_bit(up_a & g.neighbors(b) & ~low_mask(b + 1),
                         [&](int c) { out.push_back({a, b, c}); });
        });
    }
    return out;
}

inline bool is_triangle(const Graph& g, const Triangle& t) {
    return t.a != t.b && t.b != t.c && t.a != t.c && g.adjacent(t.a, t.b) &&
           g.adjacent(t.b, t.c) && g.adjacent(t.a, t.c);
}

/// Vertices reachable from `start` inside `within`.
inline VertexMask reach(const Graph& g, VertexMask start, VertexMask within) {
    VertexMask seen = start & within;
    VertexMask frontier = seen;
    while (frontier) {
        VertexMask next = 0;
        for_each_bit(frontier, [&](int v) { next |= g.neighbors(v); });
        frontier = next & within & ~seen;
        seen |= frontier;
    }
    return seen;
}

inline bool is_connected_set(const Graph& g, VertexMask set) {
    if (!set) return false;
    return reach(g, set & (~set + 1), set) == set;
}

/// Components as vertex masks, ordered by their smallest vertex.
inline std::vector<VertexMask> connected_components(const Graph& g) {
    std::vector<VertexMask> out;
    VertexMask left = g.vertices();
    while (left) {
        VertexMask comp = reach(g, left & (~left + 1), left);
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

/// Applies a relabeling: vertex v of g becomes vertex perm[v].
inline Graph relabel(const Graph& g, std::span<const int> perm) {
    std::vector<VertexMask> adj(static_cast<std::size_t>(g.order()), 0);
    for (int v = 0; v < g.order(); ++v) {
        VertexMask row = 0;
        for_each_bit(g.neighbors(v), [&](int w) { row |= bit(perm[static_cast<std::size_t>(w)]); });
        adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = row;
    }
    return Graph::from_adjacency(std::move(adj));
}

// ---------------------------------------------------------------------------
// Complete multipartite graphs and part labels

/// Part layout of a multipartite vertex set: part i is lettered 'a'+i and owns a
/// contiguous vertex range in the order the parts were given.
class PartLabeling {
public:
    PartLabeling() = default;

    explicit PartLabeling(std::vector<int> sizes) : sizes_(std::move(sizes)) {
        if (sizes_.empty()) throw GraphError("a multipartite graph needs at least one part");
        if (sizes_.size() > 26) throw GraphError("at most 26 parts can be lettered");
        int offset = 0;
        for (int s : sizes_) {
            if (s <= 0) throw GraphError("part sizes must be positive, got " + std::to_string(s));
            offsets_.push_back(offset);
            offset += s;
        }
        total_ = offset;
    }

    const std::vector<int>& sizes() const { return sizes_; }
    int part_count() const { return static_cast<int>(sizes_.size()); }
    int vertex_count() const { return total_; }

    /// Vertex id for the 1-based `index` within part `part`.
    int vertex(int part, int index) const {
        if (part < 0 || part >= part_count()) throw GraphError("part out of range");
        if (index < 1 || index > sizes_[static_cast<std::size_t>(part)])
            throw GraphError(std::string("index ") + std::to_string(index) + " exceeds part " +
                             letter(part) + " of size " +
                             std::to_string(sizes_[static_cast<std::size_t>(part)]));
        return offsets_[static_cast<std::size_t>(part)] + index - 1;
    }

    int part_of(int v) const {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
        return static_cast<int>(it - offsets_.begin()) - 1;
    }

    int index_in_part(int v) const { return v - offsets_[static_cast<std::size_t>(part_of(v))] + 1; }

    VertexMask part_mask(int part) const {
        const int lo = offsets_[static_cast<std::size_t>(part)];
        return low_mask(lo + sizes_[static_cast<std::size_t>(part)]) & ~low_mask(lo);
    }

    static char letter(int part) { return static_cast<char>('a' + part); }

    /// Reference label: bare letter for singleton parts, letter+index otherwise.
    std::string reference(int v) const {
        const int p = part_of(v);
        std::string out(1, letter(p));
        if (sizes_[static_cast<std::size_t>(p)] > 1) out += std::to_string(index_in_part(v));
        return out;
    }

    bool operator==(const PartLabeling&) const = default;

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int total_ = 0;
};

struct MultipartiteGraph {
    Graph graph;
    PartLabeling labeling;
};

inline MultipartiteGraph complete_multipartite(std::vector<int> parts) {
    PartLabeling labels(std::move(parts));
    const int n = labels.vertex_count();
    if (n > max_vertices) throw GraphError("too many vertices for a multipartite graph");
    std::vector<VertexMask> adj(static_cast<std::size_t>(n));
    for (int p = 0; p < labels.part_count(); ++p) {
        const VertexMask own = labels.part_mask(p);
        for_each_bit(own, [&](int v) { adj[static_cast<std::size_t>(v)] = low_mask(n) & ~own; });
    }
    return {Graph::from_adjacency(std::move(adj)), std::move(labels)};
}

}  // namespace knotscan
