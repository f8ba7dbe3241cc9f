#include <gtest/gtest.h>

#include <random>
#include <set>

#include "knotscan/minor.hpp"
#include "knotscan/notation.hpp"
#include "knotscan/ty_moves.hpp"
#include "support.hpp"

using namespace knotscan;

namespace {

std::size_t count_if_fp(const FamilyRegistry& reg, bool (*pred)(const MemberFingerprint&)) {
    std::size_t n = 0;
    for (const auto& f : structural_fingerprints(reg)) n += pred(f);
    return n;
}

}  // namespace

TEST(TyMoves, DeltaYBasics) {
    const Graph g = delta_y(complete_graph(6), {0, 1, 2});
    EXPECT_EQ(g.order(), 7);
    EXPECT_EQ(g.size(), 15);
    EXPECT_EQ(degree_sequence(g), (std::vector<int>{5, 5, 5, 4, 4, 4, 3}));
    EXPECT_EQ(g.neighbors(6), bit(0) | bit(1) | bit(2));
    const Graph h8 = delta_y(complete_graph(7), {0, 1, 2});
    EXPECT_EQ(h8.order(), 8);
    EXPECT_EQ(h8.size(), 21);
    EXPECT_TRUE(is_isomorphic(h8, k7_registry().find("H8")->graph));
    EXPECT_THROW(delta_y(complete_multipartite({3, 3}).graph, {0, 1, 3}), MoveError);
}

TEST(TyMoves, YDeltaBasics) {
    const Graph g = delta_y(complete_graph(6), {0, 1, 2});
    EXPECT_EQ(y_delta(g, 6), complete_graph(6));
    EXPECT_THROW(y_delta(complete_graph(5), 0), MoveError);
    const Graph p10 = petersen_registry().find("P10")->graph;
    for (int v = 0; v < 10; ++v) {
        const Graph h = y_delta(p10, v);
        EXPECT_EQ(h.order(), 9);
        EXPECT_NE(petersen_registry().find(h), nullptr);
    }
}

TEST(TyMoves, DeltaYPreservesEdgesRandom) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const Graph g = oracle::random_graph(5 + i % 6, 0.6, rng);
        for (const Triangle& t : triangles(g)) {
            const Graph h = delta_y(g, t);
            ASSERT_EQ(h.size(), g.size());
            ASSERT_EQ(h.order(), g.order() + 1);
            // The new vertex undoes back to the original graph.
            ASSERT_EQ(y_delta(h, g.order()), g);
        }
    }
}

TEST(TyMoves, ClosureSizes) {
    EXPECT_EQ(petersen_registry().size(), 7U);
    EXPECT_EQ(k7_registry().size(), 14U);
    EXPECT_EQ(k3311_registry().size(), 26U);
    EXPECT_EQ(mmik_registry().size(), 40U);
}

TEST(TyMoves, ClosureIsClosedAndPairwiseDistinct) {
    for (const auto* reg : {&petersen_registry(), &k7_registry(), &k3311_registry()}) {
        std::set<CanonicalKey> keys;
        for (const auto& m : reg->members) {
            EXPECT_TRUE(keys.insert(canonical_key(m.graph)).second) << reg->name << " " << m.name;
            for (const Triangle& t : triangles(m.graph)) EXPECT_NE(reg->find(delta_y(m.graph, t)), nullptr);
            if (reg->moves == MoveSet::delta_y_and_y_delta)
                for (int v = 0; v < m.graph.order(); ++v)
                    if (m.graph.degree(v) == 3) EXPECT_NE(reg->find(y_delta(m.graph, v)), nullptr);
        }
    }
}

TEST(TyMoves, PathsReplay) {
    for (const auto* reg : {&petersen_registry(), &k7_registry(), &k3311_registry()})
        for (const auto& m : reg->members) {
            Graph g = reg->seed;
            for (const MoveStep& s : m.path) g = apply_move(g, s);
            EXPECT_TRUE(is_isomorphic(g, m.graph)) << m.name;
        }
}

TEST(TyMoves, EdgeCounts) {
    for (const auto& m : k7_registry().members) EXPECT_EQ(m.graph.size(), 21);
    for (const auto& m : k3311_registry().members) EXPECT_EQ(m.graph.size(), 22);
    for (const auto& m : petersen_registry().members) EXPECT_EQ(m.graph.size(), 15);
}

TEST(TyMoves, PetersenMembers) {
    const auto& reg = petersen_registry();
    EXPECT_NE(reg.find(complete_graph(6)), nullptr);
    EXPECT_NE(reg.find(complete_multipartite({3, 3, 1}).graph), nullptr);
    EXPECT_NE(reg.find(parse_graph("K{4,4}-(a1,b1)")), nullptr);
    EXPECT_NE(reg.find(parse_graph("K{3,2,1,1}-{(b1,c),(b1,d)}")), nullptr);
    EXPECT_TRUE(is_isomorphic(reg.find("P10")->graph, from_graph6("IheA@GUAo")));
    bool cubic10 = false;
    for (const auto& m : reg.members) {
        bool regular = m.graph.order() == 10;
        for (int v = 0; v < m.graph.order() && regular; ++v) regular = m.graph.degree(v) == 3;
        cubic10 = cubic10 || regular;
    }
    EXPECT_TRUE(cubic10);
}

TEST(TyMoves, K3311Fingerprints) {
    const auto& reg = k3311_registry();
    std::vector<int> triangle_free;
    for (const auto& f : structural_fingerprints(reg))
        if (f.triangle_free) triangle_free.push_back(f.vertices);
    std::sort(triangle_free.begin(), triangle_free.end());
    EXPECT_EQ(triangle_free, (std::vector<int>{13, 13, 14}));
    int max_n = 0, at_max = 0;
    for (const auto& m : reg.members) max_n = std::max(max_n, m.graph.order());
    for (const auto& m : reg.members) at_max += m.graph.order() == max_n;
    EXPECT_EQ(max_n, 14);
    EXPECT_EQ(at_max, 1);
    EXPECT_EQ(reg.find("A14")->graph.order(), 14);
    EXPECT_GT(count_if_fp(reg, [](const MemberFingerprint& f) { return f.has_555_triangle; }), 0U);
}

TEST(TyMoves, CollisionGroupsAreSeparated) {
    const auto groups = degree_sequence_collisions(k3311_registry());
    ASSERT_EQ(groups.size(), 4U);
    std::map<int, std::vector<std::size_t>> sizes;
    for (const auto& g : groups) sizes[g.front()->graph.order()].push_back(g.size());
    EXPECT_EQ(sizes[11], (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(sizes[12], (std::vector<std::size_t>{3}));
    EXPECT_EQ(sizes[13], (std::vector<std::size_t>{2}));
    for (const auto& g : groups) {
        const int n = g.front()->graph.order();
        auto exactly_one = [&](bool (*pred)(const MemberFingerprint&)) {
            int hits = 0;
            for (const auto* m : g) hits += pred(fingerprint(m->graph));
            return hits == 1;
        };
        const bool b11 = exactly_one([](const MemberFingerprint& f) { return f.has_555_triangle; });
        const bool g11 = exactly_one([](const MemberFingerprint& f) { return f.has_cubic_vertex_on_quartics; });
        if (n == 11) EXPECT_TRUE(b11 != g11);
        if (n == 12) EXPECT_TRUE(exactly_one([](const MemberFingerprint& f) { return f.has_554_triangle; }));
        if (n == 13) EXPECT_TRUE(exactly_one([](const MemberFingerprint& f) { return !f.triangle_free; }));
    }
}

TEST(TyMoves, Names) {
    const auto& k7 = k7_registry();
    for (const char* name : {"K7", "H8", "H9", "F9", "C14"}) EXPECT_NE(k7.find(std::string(name)), nullptr) << name;
    const auto& k3311 = k3311_registry();
    for (const char* name : {"K3,3,1,1", "B9", "A11", "B11", "E11", "G11", "A12", "B12", "A13", "B13", "C13", "A14"})
        EXPECT_NE(k3311.find(std::string(name)), nullptr) << name;
    EXPECT_TRUE(fingerprint(k3311.find("B11")->graph).has_555_triangle);
    EXPECT_TRUE(fingerprint(k3311.find("G11")->graph).has_cubic_vertex_on_quartics);
    EXPECT_TRUE(fingerprint(k3311.find("A12")->graph).has_554_triangle);
    EXPECT_TRUE(fingerprint(k3311.find("B13")->graph).triangle_free);
    EXPECT_FALSE(fingerprint(k3311.find("A13")->graph).triangle_free);
    std::set<std::string> names;
    for (const auto& m : mmik_registry().members) EXPECT_TRUE(names.insert(m.name).second) << m.name;
}

TEST(TyMoves, ClosureDeterministic) {
    const FamilyRegistry a = closure(complete_graph(7), MoveSet::delta_y_only);
    const FamilyRegistry b = closure(complete_graph(7), MoveSet::delta_y_only);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.members[i].graph, b.members[i].graph);
        if (i) EXPECT_LT(std::pair(a.members[i - 1].graph.order(), a.members[i - 1].key), std::pair(a.members[i].graph.order(), a.members[i].key));
    }
}

TEST(TyMoves, ClosureCap) { EXPECT_THROW(closure(complete_graph(7), MoveSet::delta_y_only, 5), ClosureLimitError); }
