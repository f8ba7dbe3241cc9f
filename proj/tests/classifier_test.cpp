#include <gtest/gtest.h>

#include <random>

#include "knotscan/classifier.hpp"
#include "knotscan/notation.hpp"
#include "support.hpp"

using namespace knotscan;

namespace {

Graph kp(std::vector<int> parts) { return complete_multipartite(std::move(parts)).graph; }

Classifier& shared() {
    static Classifier clf(petersen_registry(), mmik_registry(), ClassifierOptions{true});
    return clf;
}

}  // namespace

TEST(Classifier, LinkingExamples) {
    Classifier& clf = shared();
    const LinkVerdict k6 = clf.classify_linking(complete_graph(6));
    ASSERT_TRUE(k6.linked);
    EXPECT_EQ(k6.member, "K6");
    EXPECT_TRUE(verify_witness(complete_graph(6), complete_graph(6), *k6.witness));
    EXPECT_FALSE(clf.classify_linking(complete_graph(5)).linked);
    EXPECT_TRUE(clf.classify_linking(parse_graph("K{3,3,2}-{(a1,c1),(a1,c2)}")).linked);
    const Graph p7 = parse_graph("K{3,2,1,1}-{(b1,c),(b1,d)}");
    const LinkVerdict v = clf.classify_linking(p7);
    ASSERT_TRUE(v.linked);
    EXPECT_TRUE(is_isomorphic(petersen_registry().find(v.member)->graph, p7));
}

TEST(Classifier, KnottingExamples) {
    Classifier& clf = shared();
    EXPECT_TRUE(clf.classify_knotting_local(complete_graph(7)).knotted());
    EXPECT_TRUE(clf.classify_knotting_local(kp({3, 3, 1, 1})).knotted());
    const KnotVerdict cd = clf.classify_knotting_local(parse_graph("K{3,3,1,1}-(c,d)"));
    ASSERT_TRUE(cd.not_knotted());
    EXPECT_EQ(cd.certificate->kind, Certificate::Kind::pair_deletion_planar);
    for (const char* s : {"K{5,5}-{(a1,b1),(a1,b2)}", "K{5,5}-{(a1,b1),(a2,b2)}"}) {
        const KnotVerdict v = clf.classify_knotting_local(parse_graph(s));
        ASSERT_TRUE(v.knotted()) << s;
        EXPECT_EQ(v.member, "H9") << s;
    }
    const KnotVerdict b9 = clf.classify_knotting_local(parse_graph("K{4,3,2}-{(b1,c1),(b1,c2)}"));
    ASSERT_TRUE(b9.knotted());
    EXPECT_TRUE(has_minor(parse_graph("K{4,3,2}-{(b1,c1),(b1,c2)}"), k3311_registry().find("B9")->graph));
    EXPECT_TRUE(clf.classify_knotting_local(complete_graph(6)).not_knotted());
}

TEST(Classifier, ProperMinorCertificate) {
    // K7 minus an edge has a planar pair too; build a graph with no planar
    // pair that sits strictly inside a family member.
    Classifier& clf = shared();
    for (const auto& m : mmik_registry().members) {
        for (const Edge& e : m.graph.edges()) {
            const Graph g = delete_edge(m.graph, e);
            const KnotVerdict v = clf.classify_knotting_local(g);
            ASSERT_TRUE(v.not_knotted()) << m.name;
            EXPECT_TRUE(recheck_certificate(g, *v.certificate));
        }
    }
}

TEST(Classifier, Adams) {
    Classifier clf;
    const AdamsReport k7 = clf.check_adams(complete_graph(7));
    EXPECT_TRUE(k7.passed);
    EXPECT_FALSE(k7.vacuous);
    EXPECT_EQ(k7.deletions.size(), 7U);
    EXPECT_TRUE(clf.check_adams(k7_registry().find("H8")->graph).passed);
    EXPECT_TRUE(clf.check_adams(parse_graph("K{5,5}-(a1,b1)")).passed);
    const AdamsReport k5 = clf.check_adams(complete_graph(5));
    EXPECT_TRUE(k5.vacuous);
    EXPECT_TRUE(k5.passed);
}

TEST(Classifier, CorpusProperties) {
    Classifier& clf = shared();
    std::vector<std::pair<std::string, Graph>> corpus = oracle::table_graphs(12, 4);
    for (auto& x : oracle::named_graphs()) corpus.push_back(std::move(x));
    for (const auto& [name, g] : corpus) {
        const LinkVerdict l = clf.classify_linking(g);
        if (l.linked) EXPECT_TRUE(verify_witness(g, petersen_registry().find(l.member)->graph, *l.witness)) << name;
        if (l.apex) EXPECT_FALSE(clf.linking_exhaustive(g).linked) << name;
        const KnotVerdict k = clf.classify_knotting_local(g);
        if (k.knotted()) {
            EXPECT_TRUE(verify_witness(g, mmik_registry().find(k.member)->graph, *k.witness)) << name;
            EXPECT_FALSE(planar_pair(g)) << name;
            EXPECT_TRUE(l.linked) << name;
        }
        if (k.not_knotted()) {
            EXPECT_TRUE(recheck_certificate(g, *k.certificate)) << name;
            for (const auto& m : mmik_registry().members) EXPECT_FALSE(has_minor(g, m.graph)) << name << " " << m.name;
        }
    }
}

TEST(Classifier, LinkingMonotone) {
    Classifier& clf = shared();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 80; ++i) {
        const Graph g = oracle::random_graph(7 + i % 3, 0.7, rng);
        bool child_linked = false;
        for (int v = 0; v < g.order() && !child_linked; ++v) child_linked = clf.classify_linking(delete_vertex(g, v)).linked;
        if (child_linked) EXPECT_TRUE(clf.classify_linking(g).linked);
    }
}

TEST(Classifier, StoreCertifies) {
    Classifier clf;
    const Graph big = parse_graph("K{4,4,1}-{(a1,b1),(a1,b2)}");
    ASSERT_TRUE(clf.classify_knotting(big).not_knotted());
    EXPECT_EQ(clf.store().size(), 1U);
    const Graph small = delete_edge(big, Edge(1, 4));
    const KnotVerdict v = clf.certify_from_store(small);
    ASSERT_TRUE(v.not_knotted());
    EXPECT_EQ(v.certificate->kind, Certificate::Kind::minor_of_certified);
    EXPECT_TRUE(recheck_certificate(small, *v.certificate));
}

TEST(Classifier, RecheckRejectsForgedCertificates) {
    Certificate c;
    c.kind = Certificate::Kind::pair_deletion_planar;
    c.pair = {0, 1};
    EXPECT_FALSE(recheck_certificate(complete_graph(8), c));
    c.kind = Certificate::Kind::proper_minor_of_mmik;
    c.member = "K7";
    c.witness = MinorWitness{{bit(0), bit(1), bit(2), bit(3), bit(4), bit(5), bit(6)}};
    EXPECT_FALSE(recheck_certificate(complete_graph(7), c));
}

TEST(Classifier, ValidationModeCrossChecks) {
    Classifier clf(petersen_registry(), mmik_registry(), ClassifierOptions{true});
    std::mt19937_64 rng(12);
    for (int i = 0; i < 60; ++i) EXPECT_NO_THROW(clf.classify_linking(oracle::random_graph(6 + i % 4, 0.6, rng)));
}
