#pragma once

// graph6 text encoding for graphs with at most 62 vertices.

#include <string>
#include <string_view>

#include "graph.hpp"

namespace knotscan {

class Graph6Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string to_graph6(const Graph& g) {
    const int n = g.order();
    std::string out(1, static_cast<char>(n + 63));
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out += static_cast<char>(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out += static_cast<char>((acc << (6 - filled)) + 63);
    return out;
}

inline Graph from_graph6(std::string_view text) {
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header)) text.remove_prefix(header.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) throw Graph6Error("empty graph6 string");
    for (char c : text)
        if (c < 63 || c > 126) throw Graph6Error("invalid graph6 character");
    const int n = text[0] - 63;
    if (n > max_vertices) throw Graph6Error("graph6 input with more than 62 vertices is not supported");
    const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
    const std::size_t expected = 1 + (bits + 5) / 6;
    if (text.size() != expected)
        throw Graph6Error("graph6 length " + std::to_string(text.size()) + " does not match " +
                          std::to_string(n) + " vertices");
    std::vector<VertexMask> adj(static_cast<std::size_t>(n), 0);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            const int byte = text[1 + k / 6] - 63;
            if ((byte >> (5 - k % 6)) & 1) {
                adj[static_cast<std::size_t>(i)] |= bit(j);
                adj[static_cast<std::size_t>(j)] |= bit(i);
            }
        }
    }
    if (k % 6 != 0) {
        const int last = text.back() - 63;
        if (last & ((1 << (6 - k % 6)) - 1)) throw Graph6Error("nonzero graph6 padding bits");
    }
    return Graph::from_adjacency(std::move(adj));
}

}  // namespace knotscan
