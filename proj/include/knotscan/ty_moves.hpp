#pragma once

// Triangle-Y / Y-triangle exchanges, closure of a seed graph under them, and
// the three registries the classifiers depend on: the Petersen family (linking
// obstructions) and the K7 and K3,3,1,1 families (known minor-minimal
// intrinsically knotted graphs).

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace knotscan {

class MoveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deletes the triangle's edges and adds a vertex (id n) joined to its corners.
inline Graph delta_y(const Graph& g, const Triangle& t) {
    if (!is_triangle(g, t))
        throw MoveError("(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) +
                        ") is not a triangle");
    if (g.order() + 1 > max_vertices) throw MoveError("delta-Y exceeds the vertex cap");
    std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
    const VertexMask corners = bit(t.a) | bit(t.b) | bit(t.c);
    const int fresh = g.order();
    for (int v : {t.a, t.b, t.c}) adj[static_cast<std::size_t>(v)] = (adj[static_cast<std::size_t>(v)] & ~corners) | bit(fresh);
    adj.push_back(corners);
    return Graph::from_adjacency(std::move(adj));
}

/// Removes a degree-3 vertex and joins its neighbors pairwise. Edges already
/// present among the neighbors are kept once.
inline Graph y_delta(const Graph& g, int v) {
    if (v < 0 || v >= g.order()) throw MoveError("vertex " + std::to_string(v) + " out of range");
    if (g.degree(v) != 3)
        throw MoveError("Y-delta needs a degree-3 vertex; vertex " + std::to_string(v) + " has degree " +
                        std::to_string(g.degree(v)));
    std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
    const VertexMask nbrs = g.neighbors(v);
    for_each_bit(nbrs, [&](int w) { adj[static_cast<std::size_t>(w)] |= nbrs & ~bit(w); });
    return delete_vertex(Graph::from_adjacency(std::move(adj)), v);
}

enum class MoveKind { delta_y, y_delta };

struct MoveStep {
    MoveKind kind = MoveKind::delta_y;
    /// Triangle corners for delta-Y, the single center vertex for Y-delta.
    std::vector<int> vertices;

    bool operator==(const MoveStep&) const = default;

    std::string to_string() const {
        std::string out = kind == MoveKind::delta_y ? "dy(" : "yd(";
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(vertices[i]);
        }
        return out + ')';
    }
};

inline Graph apply_move(const Graph& g, const MoveStep& step) {
    if (step.kind == MoveKind::delta_y) {
        if (step.vertices.size() != 3) throw MoveError("delta-Y step needs three vertices");
        return delta_y(g, {step.vertices[0], step.vertices[1], step.vertices[2]});
    }
    if (step.vertices.size() != 1) throw MoveError("Y-delta step needs one vertex");
    return y_delta(g, step.vertices[0]);
}

enum class MoveSet { delta_y_only, delta_y_and_y_delta };

inline std::string to_string(MoveSet moves) {
    return moves == MoveSet::delta_y_only ? "dy" : "dy,yd";
}

struct FamilyMember {
    std::string name;
    /// True when the name was assigned by canonical order rather than a structural rule.
    bool positional_name = false;
    Graph graph;
    CanonicalKey key;
    std::vector<int> degrees;
    /// Moves replayed from the registry seed that produce `graph` exactly.
    std::vector<MoveStep> path;
};

struct FamilyRegistry {
    std::string name;
    Graph seed;
    MoveSet moves = MoveSet::delta_y_only;
    std::vector<FamilyMember> members;
    std::string provenance;

    std::size_t size() const { return members.size(); }

    const FamilyMember* find(const Graph& g) const {
        const CanonicalKey key = canonical_key(g);
        for (const auto& m : members)
            if (m.key == key) return &m;
        return nullptr;
    }

    const FamilyMember* find(std::string_view member_name) const {
        for (const auto& m : members)
            if (m.name == member_name) return &m;
        return nullptr;
    }
};

class ClosureLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Breadth-first closure of `seed` under the allowed moves, deduplicated by
/// canonical form. Members are ordered by vertex count, then canonical string;
/// names are left empty for the caller.
inline FamilyRegistry closure(const Graph& seed, MoveSet moves, std::size_t cap = 10'000) {
    FamilyRegistry reg;
    reg.seed = seed;
    reg.moves = moves;
    std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> seen;
    std::vector<FamilyMember> found;
    std::deque<std::size_t> queue;

    auto admit = [&](Graph g, std::vector<MoveStep> path) {
        CanonicalKey key = canonical_key(g);
        if (seen.contains(key)) return;
        if (found.size() >= cap) throw ClosureLimitError("closure exceeded " + std::to_string(cap) + " members");
        seen.emplace(key, found.size());
        FamilyMember m;
        m.degrees = degree_sequence(g);
        m.graph = std::move(g);
        m.key = std::move(key);
        m.path = std::move(path);
        queue.push_back(found.size());
        found.push_back(std::move(m));
    };

    admit(seed, {});
    while (!queue.empty()) {
        const std::size_t at = queue.front();
        queue.pop_front();
        const Graph g = found[at].graph;
        const std::vector<MoveStep> path = found[at].path;
        for (const Triangle& t : triangles(g)) {
            MoveStep step{MoveKind::delta_y, {t.a, t.b, t.c}};
            auto next = path;
            next.push_back(step);
            admit(delta_y(g, t), std::move(next));
        }
        if (moves == MoveSet::delta_y_and_y_delta) {
            for (int v = 0; v < g.order(); ++v) {
                if (g.degree(v) != 3) continue;
                MoveStep step{MoveKind::y_delta, {v}};
                auto next = path;
                next.push_back(step);
                admit(y_delta(g, v), std::move(next));
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const FamilyMember& a, const FamilyMember& b) { return a.key < b.key; });
    reg.members = std::move(found);
    return reg;
}

// ---------------------------------------------------------------------------
// Structural fingerprints

struct MemberFingerprint {
    std::string name;
    int vertices = 0;
    int edges = 0;
    std::vector<int> degrees;
    bool triangle_free = false;
    bool has_555_triangle = false;
    /// A degree-3 vertex whose neighbors all have degree 4.
    bool has_cubic_vertex_on_quartics = false;
    bool has_554_triangle = false;
};

inline MemberFingerprint fingerprint(const Graph& g) {
    MemberFingerprint f;
    f.vertices = g.order();
    f.edges = g.size();
    f.degrees = degree_sequence(g);
    const auto tris = triangles(g);
    f.triangle_free = tris.empty();
    for (const Triangle& t : tris) {
        std::array<int, 3> d{g.degree(t.a), g.degree(t.b), g.degree(t.c)};
        std::sort(d.begin(), d.end());
        if (d == std::array<int, 3>{5, 5, 5}) f.has_555_triangle = true;
        if (d == std::array<int, 3>{4, 5, 5}) f.has_554_triangle = true;
    }
    for (int v = 0; v < g.order(); ++v) {
        if (g.degree(v) != 3) continue;
        bool all_quartic = true;
        for_each_bit(g.neighbors(v), [&](int w) { all_quartic = all_quartic && g.degree(w) == 4; });
        if (all_quartic) f.has_cubic_vertex_on_quartics = true;
    }
    return f;
}

inline std::vector<MemberFingerprint> structural_fingerprints(const FamilyRegistry& reg) {
    std::vector<MemberFingerprint> out;
    for (const auto& m : reg.members) {
        out.push_back(fingerprint(m.graph));
        out.back().name = m.name;
    }
    return out;
}

/// Groups of members sharing a vertex count and degree sequence.
inline std::vector<std::vector<const FamilyMember*>> degree_sequence_collisions(const FamilyRegistry& reg) {
    std::map<std::pair<int, std::vector<int>>, std::vector<const FamilyMember*>> groups;
    for (const auto& m : reg.members) groups[{m.graph.order(), m.degrees}].push_back(&m);
    std::vector<std::vector<const FamilyMember*>> out;
    for (auto& [k, v] : groups)
        if (v.size() > 1) out.push_back(std::move(v));
    return out;
}

// ---------------------------------------------------------------------------
// Named registries

namespace detail {

inline int triangle_count(const Graph& g) { return static_cast<int>(triangles(g).size()); }

inline std::string degree_string(const std::vector<int>& degrees) {
    std::string out;
    for (int d : degrees) out += std::to_string(d);
    return out;
}

// Attaches `name` to the unique unnamed member with n vertices satisfying
// `pred`; leaves everything untouched when the match is not unique.
template <class Pred>
bool pin_name(FamilyRegistry& reg, int n, const std::string& name, Pred pred) {
    FamilyMember* hit = nullptr;
    for (auto& m : reg.members) {
        if (m.graph.order() != n || !m.name.empty() || !pred(m)) continue;
        if (hit) return false;
        hit = &m;
    }
    if (!hit) return false;
    hit->name = name;
    return true;
}

// Gives the remaining members of each row the unused letters of that row, in
// canonical order.
inline void name_rows_positionally(FamilyRegistry& reg) {
    std::map<int, std::vector<FamilyMember*>> rows;
    for (auto& m : reg.members) rows[m.graph.order()].push_back(&m);
    for (auto& [n, row] : rows) {
        std::vector<std::string> taken;
        for (auto* m : row)
            if (!m->name.empty()) taken.push_back(m->name);
        char letter = 'A';
        for (auto* m : row) {
            if (!m->name.empty()) continue;
            std::string name;
            do name = std::string(1, letter++) + std::to_string(n);
            while (std::find(taken.begin(), taken.end(), name) != taken.end());
            m->name = name;
            m->positional_name = true;
        }
    }
}

inline bool has_degrees(const FamilyMember& m, std::string_view degrees) { return degree_string(m.degrees) == degrees; }

}  // namespace detail

inline FamilyRegistry build_petersen_registry() {
    FamilyRegistry reg = closure(complete_graph(6), MoveSet::delta_y_and_y_delta);
    reg.name = "petersen";
    reg.provenance = "closure of K6 under delta-Y and Y-delta";
    using detail::has_degrees;
    detail::pin_name(reg, 6, "K6", [](const FamilyMember&) { return true; });
    detail::pin_name(reg, 7, "K3,3,1", [](const FamilyMember& m) { return has_degrees(m, "6444444"); });
    detail::pin_name(reg, 7, "P7", [](const FamilyMember& m) { return has_degrees(m, "5554443"); });
    detail::pin_name(reg, 8, "K4,4-e", [](const FamilyMember& m) { return detail::triangle_count(m.graph) == 0; });
    detail::pin_name(reg, 8, "P8", [](const FamilyMember& m) { return detail::triangle_count(m.graph) > 0; });
    detail::pin_name(reg, 9, "P9", [](const FamilyMember&) { return true; });
    detail::pin_name(reg, 10, "P10", [](const FamilyMember&) { return true; });
    detail::name_rows_positionally(reg);
    return reg;
}

inline FamilyRegistry build_k7_registry() {
    FamilyRegistry reg = closure(complete_graph(7), MoveSet::delta_y_only);
    reg.name = "k7";
    reg.provenance = "closure of K7 under delta-Y";
    using detail::has_degrees;
    detail::pin_name(reg, 7, "K7", [](const FamilyMember&) { return true; });
    detail::pin_name(reg, 8, "H8", [](const FamilyMember&) { return true; });
    detail::pin_name(reg, 9, "H9", [](const FamilyMember& m) { return has_degrees(m, "655555533"); });
    detail::pin_name(reg, 9, "F9", [](const FamilyMember& m) { return has_degrees(m, "665555433"); });
    detail::pin_name(reg, 14, "C14", [](const FamilyMember&) { return true; });
    // Several letters of this family coincide with names in the K3,3,1,1
    // family, so unpinned members carry a family prefix.
    std::map<int, char> next;
    for (auto& m : reg.members) {
        if (!m.name.empty()) continue;
        const int n = m.graph.order();
        char& letter = next.try_emplace(n, 'a').first->second;
        m.name = "K7:" + std::to_string(n) + letter++;
        m.positional_name = true;
    }
    return reg;
}

inline FamilyRegistry build_k3311_registry() {
    FamilyRegistry reg = closure(complete_multipartite({3, 3, 1, 1}).graph, MoveSet::delta_y_only);
    reg.name = "k3311";
    reg.provenance = "closure of K3,3,1,1 under delta-Y";
    auto fp = [](const FamilyMember& m) { return fingerprint(m.graph); };
    using detail::has_degrees;
    detail::pin_name(reg, 8, "K3,3,1,1", [](const FamilyMember&) { return true; });
    detail::pin_name(reg, 9, "B9", [](const FamilyMember& m) { return has_degrees(m, "665555543"); });
    for (const auto& group : degree_sequence_collisions(reg)) {
        const int n = group.front()->graph.order();
        const std::string degrees = detail::degree_string(group.front()->degrees);
        auto in_group = [&](const FamilyMember& m) { return has_degrees(m, degrees); };
        if (n == 11 && detail::pin_name(reg, 11, "B11", [&](const FamilyMember& m) { return in_group(m) && fp(m).has_555_triangle; })) {
            detail::pin_name(reg, 11, "A11", in_group);
        } else if (n == 11 &&
                   detail::pin_name(reg, 11, "G11", [&](const FamilyMember& m) { return in_group(m) && fp(m).has_cubic_vertex_on_quartics; })) {
            detail::pin_name(reg, 11, "E11", in_group);
        } else if (n == 12) {
            detail::pin_name(reg, 12, "A12", [&](const FamilyMember& m) { return in_group(m) && fp(m).has_554_triangle; });
            // Three members share this degree sequence; nothing structural
            // separates the two without a 5,5,4 triangle.
            for (auto& m : reg.members)
                if (m.name.empty() && in_group(m)) {
                    m.name = "B12";
                    m.positional_name = true;
                    break;
                }
        } else if (n == 13 && detail::pin_name(reg, 13, "B13", [&](const FamilyMember& m) { return in_group(m) && fp(m).triangle_free; })) {
            detail::pin_name(reg, 13, "A13", in_group);
        }
    }
    detail::pin_name(reg, 13, "C13", [&](const FamilyMember& m) { return fp(m).triangle_free; });
    detail::pin_name(reg, 14, "A14", [](const FamilyMember&) { return true; });
    detail::name_rows_positionally(reg);
    return reg;
}

inline const FamilyRegistry& petersen_registry() {
    static const FamilyRegistry reg = build_petersen_registry();
    return reg;
}

inline const FamilyRegistry& k7_registry() {
    static const FamilyRegistry reg = build_k7_registry();
    return reg;
}

inline const FamilyRegistry& k3311_registry() {
    static const FamilyRegistry reg = build_k3311_registry();
    return reg;
}

/// Both knotting families, ordered by vertex count then canonical form.
inline FamilyRegistry merge_registries(std::string name, const FamilyRegistry& a, const FamilyRegistry& b) {
    FamilyRegistry reg;
    reg.name = std::move(name);
    reg.seed = a.seed;
    reg.moves = MoveSet::delta_y_only;
    reg.provenance = "union of " + a.name + " and " + b.name;
    reg.members = a.members;
    for (const auto& m : b.members)
        if (!reg.find(m.graph)) reg.members.push_back(m);
    std::stable_sort(reg.members.begin(), reg.members.end(),
                     [](const FamilyMember& x, const FamilyMember& y) { return x.key < y.key; });
    return reg;
}

inline const FamilyRegistry& mmik_registry() {
    static const FamilyRegistry reg = merge_registries("mmik", k7_registry(), k3311_registry());
    return reg;
}

}  // namespace knotscan
