#pragma once

// Text notation for deficient multipartite graphs:
//
//   expr    := 'K' '{' INT (',' INT)* '}' [ '-' removal ]
//   removal := '{' item (',' item)* '}' | INT 'e' | 'e' | edge
//   item    := edge | [INT] 'e'
//   edge    := '(' vref ',' vref ')'
//   vref    := LETTER [INT]
//
// Whitespace is ignored. A single part K{n} is the complete graph K_n, whose
// vertices are the singleton parts a, b, c, .... A bare letter on a larger part
// means index 1. Items written 'e' are free edges ranging over everything not
// already listed.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deficient.hpp"
#include "graph.hpp"

namespace knotscan {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::invalid_argument("position " + std::to_string(position) + ": " + message), position_(position),
          detail_(message) {}

    std::size_t position() const { return position_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

struct VertexRef {
    int part = 0;
    std::optional<int> index;

    bool operator==(const VertexRef&) const = default;
};

struct EdgeRef {
    VertexRef u;
    VertexRef v;

    bool operator==(const EdgeRef&) const = default;
};

struct GraphExpr {
    std::vector<int> parts;
    /// Explicitly named removed edges (the fixed ones of a constrained wildcard).
    std::vector<EdgeRef> edges;
    /// Number of additional removed edges left free.
    int free_edges = 0;

    bool is_wildcard() const { return free_edges > 0; }
    int removed_count() const { return static_cast<int>(edges.size()) + free_edges; }

    /// A lone part n stands for K_n, labeled as n singleton parts.
    PartLabeling labeling() const {
        if (parts.size() == 1) return PartLabeling(std::vector<int>(static_cast<std::size_t>(parts.front()), 1));
        return PartLabeling(parts);
    }

    int vertex(const VertexRef& r) const { return labeling().vertex(r.part, r.index.value_or(1)); }

    std::vector<Edge> fixed_edges() const {
        const PartLabeling lab = labeling();
        std::vector<Edge> out;
        for (const EdgeRef& e : edges) out.emplace_back(lab.vertex(e.u.part, e.u.index.value_or(1)), lab.vertex(e.v.part, e.v.index.value_or(1)));
        return out;
    }

    bool operator==(const GraphExpr&) const = default;
};

namespace detail {

class NotationParser {
public:
    explicit NotationParser(std::string_view text) : text_(text) {}

    GraphExpr run() {
        GraphExpr expr;
        expect('K');
        expect('{');
        for (;;) {
            const std::size_t at = skip();
            const long size = integer("part size");
            if (size <= 0) throw ParseError(at, "part sizes must be positive");
            if (size > max_vertices) throw ParseError(at, "part size exceeds " + std::to_string(max_vertices));
            expr.parts.push_back(static_cast<int>(size));
            if (!accept(',')) break;
        }
        expect('}');
        if (expr.parts.size() > 1 && expr.parts.size() > 26) throw ParseError(pos_, "at most 26 parts can be lettered");
        const int total = expr.parts.size() == 1 ? expr.parts.front()
                                                 : std::accumulate(expr.parts.begin(), expr.parts.end(), 0);
        if (total > max_vertices) throw ParseError(pos_, "more than " + std::to_string(max_vertices) + " vertices");
        if (expr.parts.size() == 1 && total > 26) throw ParseError(pos_, "complete graphs above 26 vertices cannot be lettered");
        labels_ = expr.parts.size() == 1 ? std::vector<int>(static_cast<std::size_t>(total), 1) : expr.parts;

        if (accept('-')) {
            const char c = peek();
            if (c == '{') {
                ++pos_;
                for (;;) {
                    item(expr);
                    if (!accept(',')) break;
                }
                expect('}');
            } else if (c == '(') {
                expr.edges.push_back(edge(expr));
            } else if (c == 'e') {
                ++pos_;
                expr.free_edges = 1;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                const std::size_t at = skip();
                const long k = integer("edge count");
                if (k <= 0) throw ParseError(at, "edge count must be positive");
                expect('e');
                expr.free_edges = static_cast<int>(k);
            } else {
                throw ParseError(skip(), "expected '{', '(', 'e' or an edge count after '-'");
            }
        }
        if (skip() != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        const int m = static_cast<int>((static_cast<long>(total) * total -
                                        (expr.parts.size() == 1 ? total
                                                                : std::accumulate(expr.parts.begin(), expr.parts.end(), 0L,
                                                                                  [](long a, int s) { return a + static_cast<long>(s) * s; }))) /
                                       2);
        if (expr.removed_count() > m)
            throw ParseError(text_.size(), "cannot remove " + std::to_string(expr.removed_count()) + " of " + std::to_string(m) + " edges");
        return expr;
    }

private:
    std::size_t skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_;
    }

    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) throw ParseError(pos_, std::string("expected '") + c + "' but the input ended");
            throw ParseError(pos_, std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
        }
    }

    long integer(const char* what) {
        const std::size_t at = skip();
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(at, std::string("expected ") + what);
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_++] - '0');
            if (value > 1'000'000) throw ParseError(at, std::string(what) + " is too large");
        }
        return negative ? -value : value;
    }

    void item(GraphExpr& expr) {
        const char c = peek();
        if (c == '(') {
            expr.edges.push_back(edge(expr));
        } else if (c == 'e') {
            ++pos_;
            ++expr.free_edges;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t at = skip();
            const long k = integer("edge count");
            if (k <= 0) throw ParseError(at, "edge count must be positive");
            expect('e');
            expr.free_edges += static_cast<int>(k);
        } else {
            throw ParseError(skip(), "expected an edge '(x,y)' or 'e'");
        }
    }

    VertexRef vref() {
        const std::size_t at = skip();
        if (at >= text_.size() || !std::islower(static_cast<unsigned char>(text_[at])))
            throw ParseError(at, "expected a part letter");
        VertexRef r;
        r.part = text_[pos_++] - 'a';
        if (r.part >= static_cast<int>(labels_.size()))
            throw ParseError(at, std::string("unknown part '") + static_cast<char>('a' + r.part) + "'");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t idx_at = skip();
            const long idx = integer("vertex index");
            if (idx < 1) throw ParseError(idx_at, "vertex indices start at 1");
            if (idx > labels_[static_cast<std::size_t>(r.part)])
                throw ParseError(idx_at, "index " + std::to_string(idx) + " exceeds part " + static_cast<char>('a' + r.part) +
                                             " of size " + std::to_string(labels_[static_cast<std::size_t>(r.part)]));
            r.index = static_cast<int>(idx);
        }
        return r;
    }

    EdgeRef edge(const GraphExpr& expr) {
        const std::size_t at = skip();
        expect('(');
        EdgeRef e;
        e.u = vref();
        expect(',');
        e.v = vref();
        expect(')');
        if (e.u.part == e.v.part) throw ParseError(at, "both endpoints lie in part " + std::string(1, static_cast<char>('a' + e.u.part)) + "; no such edge");
        auto key = [](const EdgeRef& x) {
            std::pair a{x.u.part, x.u.index.value_or(1)};
            std::pair b{x.v.part, x.v.index.value_or(1)};
            return a < b ? std::pair{a, b} : std::pair{b, a};
        };
        for (const EdgeRef& other : expr.edges)
            if (key(other) == key(e)) throw ParseError(at, "duplicate edge");
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<int> labels_;
};

}  // namespace detail

inline GraphExpr parse(std::string_view text) { return detail::NotationParser(text).run(); }

// ---------------------------------------------------------------------------

struct ResolvedCase {
    Graph graph;
    PartLabeling labeling;
    std::vector<Edge> removed;
    /// Removed edge set in K{...} notation; empty when nothing was removed.
    std::string label;
    std::uint64_t orbit_size = 1;
};

/// Explicit expressions give one case; wildcards give one case per orbit.
inline std::vector<ResolvedCase> resolve(const GraphExpr& expr) {
    const PartLabeling lab = expr.labeling();
    std::vector<ResolvedCase> out;
    if (!expr.is_wildcard()) {
        ResolvedCase c;
        c.labeling = lab;
        c.removed = expr.fixed_edges();
        std::sort(c.removed.begin(), c.removed.end());
        c.graph = complete_multipartite(lab.sizes()).graph.without_edges(c.removed);
        if (!c.removed.empty()) c.label = edge_set_label(lab, c.removed);
        out.push_back(std::move(c));
        return out;
    }
    for (DeficientCase& d : enumerate_deficient(lab, expr.removed_count(), expr.fixed_edges())) {
        ResolvedCase c;
        c.labeling = lab;
        c.removed = std::move(d.removed);
        c.label = std::move(d.label);
        c.graph = std::move(d.graph);
        c.orbit_size = d.orbit_size;
        out.push_back(std::move(c));
    }
    return out;
}

inline Graph resolve_graph(const GraphExpr& expr) {
    if (expr.is_wildcard()) throw GraphError("a wildcard expression names several graphs");
    return resolve(expr).front().graph;
}

inline Graph parse_graph(std::string_view text) { return resolve_graph(parse(text)); }

// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_parts(const std::vector<int>& parts) {
    std::string out = "K{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts[i]);
    }
    return out + '}';
}

}  // namespace detail

/// Parts in descending order, explicit indices on parts larger than one,
/// edges sorted.
inline std::string render(const GraphExpr& expr) {
    std::vector<int> order(expr.parts.size());
    std::iota(order.begin(), order.end(), 0);
    if (expr.parts.size() > 1)
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return expr.parts[static_cast<std::size_t>(a)] > expr.parts[static_cast<std::size_t>(b)];
        });
    std::vector<int> new_part(expr.parts.size());
    std::vector<int> parts;
    for (std::size_t i = 0; i < order.size(); ++i) {
        new_part[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        parts.push_back(expr.parts[static_cast<std::size_t>(order[i])]);
    }
    std::string out = detail::render_parts(parts);
    if (expr.removed_count() == 0) return out;
    if (expr.edges.empty()) return out + '-' + std::to_string(expr.free_edges) + 'e';

    GraphExpr normalized;
    normalized.parts = parts;
    const PartLabeling lab = normalized.labeling();
    std::vector<Edge> edges;
    for (const EdgeRef& e : expr.edges) {
        const int pu = expr.parts.size() == 1 ? e.u.part : new_part[static_cast<std::size_t>(e.u.part)];
        const int pv = expr.parts.size() == 1 ? e.v.part : new_part[static_cast<std::size_t>(e.v.part)];
        edges.emplace_back(lab.vertex(pu, e.u.index.value_or(1)), lab.vertex(pv, e.v.index.value_or(1)));
    }
    std::string set = edge_set_label(lab, edges);
    if (expr.free_edges > 0) {
        set.pop_back();
        set += ',' + (expr.free_edges > 1 ? std::to_string(expr.free_edges) : std::string()) + "e}";
    }
    return out + '-' + set;
}

/// Renders a spanning subgraph of the complete multipartite graph on `labels`
/// by listing its missing cross-part edges.
inline std::string render(const Graph& g, const PartLabeling& labels) {
    const Graph full = complete_multipartite(labels.sizes()).graph;
    if (g.order() != full.order()) throw GraphError("graph and labeling disagree on the vertex count");
    std::vector<Edge> missing;
    for (const Edge& e : g.edges())
        if (!full.has_edge(e)) throw GraphError("edge inside a part cannot be rendered");
    for (const Edge& e : full.edges())
        if (!g.has_edge(e)) missing.push_back(e);
    GraphExpr expr;
    expr.parts = labels.sizes();
    for (const Edge& e : missing)
        expr.edges.push_back({{labels.part_of(e.u), labels.index_in_part(e.u)}, {labels.part_of(e.v), labels.index_in_part(e.v)}});
    return render(expr);
}

}  // namespace knotscan
