#pragma once

// Intrinsic linking (exact, via the Petersen family) and intrinsic knotting
// (known minor-minimal graphs plus explicit non-knotting certificates).

#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "minor.hpp"
#include "ty_moves.hpp"

namespace knotscan {

class ValidationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct LinkVerdict {
    bool linked = false;
    /// Petersen member found as a minor (linked only).
    std::string member;
    std::optional<MinorWitness> witness;
    /// Vertex whose deletion leaves a planar graph, when the fast path decided.
    std::optional<int> apex;
};

struct Certificate {
    enum class Kind { pair_deletion_planar, proper_minor_of_mmik, minor_of_certified };
    Kind kind = Kind::pair_deletion_planar;
    /// PairDeletionPlanar: the deleted pair.
    std::pair<int, int> pair{-1, -1};
    /// ProperMinorOfMMIK: the registry member containing the graph.
    std::string member;
    /// MinorOfCertified: graph6 of the certified graph containing this one.
    std::string certified;
    /// Minor model of the classified graph inside `member` or `certified`.
    std::optional<MinorWitness> witness;
};

inline std::string to_string(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::pair_deletion_planar: return "PairDeletionPlanar";
        case Certificate::Kind::proper_minor_of_mmik: return "ProperMinorOfMMIK";
        case Certificate::Kind::minor_of_certified: return "MinorOfCertified";
    }
    return "?";
}

struct KnotVerdict {
    enum class Kind { knotted, not_knotted, unknown };
    Kind kind = Kind::unknown;
    std::string member;
    std::optional<MinorWitness> witness;
    std::optional<Certificate> certificate;

    bool knotted() const { return kind == Kind::knotted; }
    bool not_knotted() const { return kind == Kind::not_knotted; }
    bool unknown() const { return kind == Kind::unknown; }
};

inline std::string to_string(KnotVerdict::Kind k) {
    switch (k) {
        case KnotVerdict::Kind::knotted: return "Knotted";
        case KnotVerdict::Kind::not_knotted: return "NotKnotted";
        case KnotVerdict::Kind::unknown: return "Unknown";
    }
    return "?";
}

/// Graphs already certified not knotted during a session. Anything that is a
/// minor of one of them is not knotted either.
class CertifiedStore {
public:
    bool add(const Graph& g) {
        std::lock_guard lock(mutex_);
        if (!keys_.insert(canonical_key(g)).second) return false;
        graphs_.push_back(g);
        return true;
    }

    std::vector<Graph> snapshot() const {
        std::lock_guard lock(mutex_);
        return graphs_;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return graphs_.size();
    }

    void clear() {
        std::lock_guard lock(mutex_);
        graphs_.clear();
        keys_.clear();
    }

private:
    std::vector<Graph> graphs_;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> keys_;
    mutable std::mutex mutex_;
};

struct AdamsDeletion {
    int vertex = 0;
    LinkVerdict verdict;
};

struct AdamsReport {
    KnotVerdict knotting;
    /// True when the graph is not knotted and there is nothing to check.
    bool vacuous = false;
    bool passed = false;
    std::vector<AdamsDeletion> deletions;
};

struct ClassifierOptions {
    /// Cross-check fast paths against the exhaustive searches.
    bool validate = false;
};

class Classifier {
public:
    using Options = ClassifierOptions;

    Classifier() : Classifier(petersen_registry(), mmik_registry()) {}

    Classifier(const FamilyRegistry& petersen, const FamilyRegistry& mmik, Options options = Options())
        : petersen_(petersen), mmik_(mmik), options_(options) {}

    const FamilyRegistry& petersen() const { return petersen_; }
    const FamilyRegistry& mmik() const { return mmik_; }
    const Options& options() const { return options_; }
    void set_validate(bool on) { options_.validate = on; }

    CertifiedStore& store() { return store_; }
    const CertifiedStore& store() const { return store_; }

    /// Exhaustive Petersen-family search, smallest member first.
    LinkVerdict linking_exhaustive(const Graph& g) const {
        LinkVerdict v;
        for (const auto& m : petersen_.members) {
            if (m.graph.order() > g.order() || m.graph.size() > g.size()) continue;
            if (auto w = has_minor(g, m.graph)) {
                v.linked = true;
                v.member = m.name;
                v.witness = std::move(w);
                return v;
            }
        }
        return v;
    }

    LinkVerdict classify_linking(const Graph& g) const {
        if (auto a = apex_vertex(g)) {
            if (options_.validate && linking_exhaustive(g).linked)
                throw ValidationError("apex vertex found but a Petersen-family minor exists");
            LinkVerdict v;
            v.apex = *a;
            return v;
        }
        return linking_exhaustive(g);
    }

    /// Decides knotting without the certified store: a known minor-minimal
    /// minor, a planar pair, or containment in a registry member.
    KnotVerdict classify_knotting_local(const Graph& g) const {
        KnotVerdict v;
        for (const auto& m : mmik_.members) {
            if (m.graph.order() > g.order() || m.graph.size() > g.size()) continue;
            if (auto w = has_minor(g, m.graph)) {
                v.kind = KnotVerdict::Kind::knotted;
                v.member = m.name;
                v.witness = std::move(w);
                if (options_.validate && planar_pair(g))
                    throw ValidationError("graph has a minor-minimal knotted minor and a planar pair");
                return v;
            }
        }
        if (auto p = planar_pair(g)) {
            v.kind = KnotVerdict::Kind::not_knotted;
            Certificate c;
            c.kind = Certificate::Kind::pair_deletion_planar;
            c.pair = *p;
            v.certificate = std::move(c);
            return v;
        }
        const CanonicalKey key = canonical_key(g);
        for (const auto& m : mmik_.members) {
            if (m.graph.order() < g.order() || m.graph.size() < g.size() || m.key == key) continue;
            if (auto w = has_minor(m.graph, g)) {
                v.kind = KnotVerdict::Kind::not_knotted;
                Certificate c;
                c.kind = Certificate::Kind::proper_minor_of_mmik;
                c.member = m.name;
                c.witness = std::move(w);
                v.certificate = std::move(c);
                return v;
            }
        }
        return v;
    }

    /// Tries the certified store on an otherwise undecided graph.
    KnotVerdict certify_from_store(const Graph& g) const {
        KnotVerdict v;
        for (const Graph& h : store_.snapshot()) {
            if (h.order() < g.order() || h.size() < g.size()) continue;
            if (auto w = has_minor(h, g)) {
                v.kind = KnotVerdict::Kind::not_knotted;
                Certificate c;
                c.kind = Certificate::Kind::minor_of_certified;
                c.certified = to_graph6(h);
                c.witness = std::move(w);
                v.certificate = std::move(c);
                return v;
            }
        }
        return v;
    }

    /// Full decision procedure; NotKnotted results join the certified store.
    KnotVerdict classify_knotting(const Graph& g) {
        KnotVerdict v = classify_knotting_local(g);
        if (v.unknown()) v = certify_from_store(g);
        if (v.not_knotted()) store_.add(g);
        return v;
    }

    AdamsReport check_adams(const Graph& g) {
        AdamsReport r;
        r.knotting = classify_knotting(g);
        if (!r.knotting.knotted()) {
            r.vacuous = true;
            r.passed = true;
            return r;
        }
        r.passed = true;
        for (int v = 0; v < g.order(); ++v) {
            AdamsDeletion d{v, classify_linking(delete_vertex(g, v))};
            r.passed = r.passed && d.verdict.linked;
            r.deletions.push_back(std::move(d));
        }
        return r;
    }

private:
    const FamilyRegistry& petersen_;
    const FamilyRegistry& mmik_;
    Options options_;
    CertifiedStore store_;
};

/// Re-checks a certificate against the graph it was issued for.
inline bool recheck_certificate(const Graph& g, const Certificate& c, const FamilyRegistry& mmik = mmik_registry()) {
    switch (c.kind) {
        case Certificate::Kind::pair_deletion_planar:
            if (c.pair.first < 0 || c.pair.second >= g.order() || c.pair.first >= c.pair.second) return false;
            return is_planar(delete_vertices(g, bit(c.pair.first) | bit(c.pair.second)));
        case Certificate::Kind::proper_minor_of_mmik: {
            const FamilyMember* m = mmik.find(c.member);
            if (!m || !c.witness || is_isomorphic(m->graph, g)) return false;
            return verify_witness(m->graph, g, *c.witness);
        }
        case Certificate::Kind::minor_of_certified:
            if (!c.witness) return false;
            return verify_witness(from_graph6(c.certified), g, *c.witness);
    }
    return false;
}

}  // namespace knotscan
