#pragma once

// Table reproduction, the small-graph census, Adams sweeps and edge bounds.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "canonical.hpp"
#include "classifier.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "notation.hpp"

namespace knotscan {

// ---------------------------------------------------------------------------
// Work distribution

inline int default_width() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls fn(i) for i in [0, n) on up to `width` threads. Results are written
/// by index, so callers reduce in order afterwards.
template <class Fn>
void parallel_for(std::size_t n, int width, Fn&& fn) {
    if (width <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(width), n);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Table data

enum class Expectation { linked, not_linked, knotted, not_knotted };

inline std::string to_string(Expectation e) {
    switch (e) {
        case Expectation::linked: return "linked";
        case Expectation::not_linked: return "not_linked";
        case Expectation::knotted: return "knotted";
        case Expectation::not_knotted: return "not_knotted";
    }
    return "?";
}

inline bool is_linking(Expectation e) { return e == Expectation::linked || e == Expectation::not_linked; }

class TableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TableEntry {
    std::string table;
    /// Column heading: number of parts, "6+" for open-ended columns.
    std::string column;
    /// Notation, possibly with the placeholder part "n".
    std::string spec;
    Expectation expected = Expectation::linked;
    int n_from = 1;
    int line = 0;

    bool parametrized() const { return spec.find("{n") != std::string::npos; }

    std::string instantiate(int n) const {
        std::string out = spec;
        const auto at = out.find("{n");
        if (at != std::string::npos) out.replace(at + 1, 1, std::to_string(n));
        return out;
    }
};

inline const std::vector<std::string>& table_ids() {
    static const std::vector<std::string> ids{"il0", "ik0", "il1", "ik1", "il2", "il2cont", "ik2", "ik2cont"};
    return ids;
}

inline std::filesystem::path default_tables_dir() {
    if (const char* env = std::getenv("KNOTSCAN_TABLES")) return env;
#ifdef KNOTSCAN_DATA_DIR
    return std::filesystem::path(KNOTSCAN_DATA_DIR) / "tables";
#else
    return "data/tables";
#endif
}

inline std::vector<TableEntry> parse_table(std::istream& in, const std::string& id) {
    std::vector<TableEntry> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, '\t');) fields.push_back(f);
        if (fields.size() < 3 || fields.size() > 4)
            throw TableError(id + ":" + std::to_string(number) + ": expected 3 or 4 tab-separated fields");
        TableEntry e;
        e.table = id;
        e.column = fields[0];
        e.spec = fields[1];
        e.line = number;
        const std::string& x = fields[2];
        if (x == "linked") e.expected = Expectation::linked;
        else if (x == "not_linked") e.expected = Expectation::not_linked;
        else if (x == "knotted") e.expected = Expectation::knotted;
        else if (x == "not_knotted") e.expected = Expectation::not_knotted;
        else throw TableError(id + ":" + std::to_string(number) + ": unknown verdict '" + x + "'");
        if (fields.size() == 4 && !fields[3].empty()) {
            try {
                e.n_from = std::stoi(fields[3]);
            } catch (const std::exception&) {
                throw TableError(id + ":" + std::to_string(number) + ": bad n_from '" + fields[3] + "'");
            }
        }
        try {
            (void)parse(e.parametrized() ? e.instantiate(std::max(e.n_from, 4)) : e.spec);
        } catch (const ParseError& err) {
            throw TableError(id + ":" + std::to_string(number) + ": " + err.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<TableEntry> load_table(const std::string& id, const std::filesystem::path& dir = default_tables_dir()) {
    const auto path = dir / (id + ".tsv");
    std::ifstream in(path);
    if (!in) throw TableError("missing table file " + path.string());
    return parse_table(in, id);
}

// ---------------------------------------------------------------------------
// Table check

struct CaseResult {
    /// Instantiated notation of the entry this case came from.
    std::string spec;
    std::string label;
    Graph graph;
    std::uint64_t orbit_size = 1;
    bool from_wildcard = false;
    std::optional<LinkVerdict> link;
    std::optional<KnotVerdict> knot;
    bool ok = false;
    bool unknown = false;

    std::string outcome() const {
        if (link) return link->linked ? "linked" : "not_linked";
        if (knot) {
            if (knot->knotted()) return "knotted";
            if (knot->not_knotted()) return "not_knotted";
        }
        return "unknown";
    }
};

struct EntryResult {
    TableEntry entry;
    /// Value substituted for "n", or 0 for fixed entries.
    int n = 0;
    std::vector<CaseResult> cases;
    std::string error;

    bool ok() const {
        if (!error.empty() || cases.empty()) return false;
        return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.ok; });
    }
};

struct TableReport {
    std::string table;
    int n_max = 6;
    std::vector<EntryResult> entries;
    int case_count = 0;
    int mismatches = 0;
    int unknowns = 0;
    int errors = 0;

    bool passed() const { return mismatches == 0 && unknowns == 0 && errors == 0 && !entries.empty(); }
};

struct TableOptions {
    int n_max = 6;
    int width = default_width();
    std::filesystem::path dir = default_tables_dir();
};

namespace detail {

inline std::vector<EntryResult> expand_entries(const std::vector<TableEntry>& entries, int n_max) {
    std::vector<EntryResult> out;
    for (const TableEntry& e : entries) {
        const int lo = e.parametrized() ? e.n_from : 0;
        const int hi = e.parametrized() ? n_max : 0;
        for (int n = lo; n <= hi; ++n) {
            EntryResult r;
            r.entry = e;
            r.n = n;
            const std::string text = e.parametrized() ? e.instantiate(n) : e.spec;
            try {
                const GraphExpr expr = parse(text);
                for (ResolvedCase& c : resolve(expr)) {
                    CaseResult cr;
                    cr.spec = text;
                    cr.from_wildcard = expr.is_wildcard();
                    cr.label = c.label;
                    cr.graph = std::move(c.graph);
                    cr.orbit_size = c.orbit_size;
                    r.cases.push_back(std::move(cr));
                }
            } catch (const std::exception& err) {
                r.error = err.what();
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

/// Classifies every case: store-free decisions run in parallel, then the
/// certified store is filled and consulted sequentially in entry order.
inline void classify_cases(std::vector<CaseResult*>& cases, bool linking, Classifier& clf, int width) {
    if (linking) {
        parallel_for(cases.size(), width, [&](std::size_t i) { cases[i]->link = clf.classify_linking(cases[i]->graph); });
        return;
    }
    parallel_for(cases.size(), width, [&](std::size_t i) { cases[i]->knot = clf.classify_knotting_local(cases[i]->graph); });
    for (CaseResult* c : cases)
        if (c->knot->not_knotted()) clf.store().add(c->graph);
    for (CaseResult* c : cases) {
        if (!c->knot->unknown()) continue;
        c->knot = clf.certify_from_store(c->graph);
        if (c->knot->not_knotted()) clf.store().add(c->graph);
    }
}

}  // namespace detail

inline TableReport table_check(const std::string& id, Classifier& clf, const TableOptions& opt = {}) {
    TableReport report;
    report.table = id;
    report.n_max = opt.n_max;
    const auto entries = load_table(id, opt.dir);
    report.entries = detail::expand_entries(entries, opt.n_max);
    std::vector<CaseResult*> link_cases;
    std::vector<CaseResult*> knot_cases;
    for (EntryResult& r : report.entries)
        for (CaseResult& c : r.cases) (is_linking(r.entry.expected) ? link_cases : knot_cases).push_back(&c);
    detail::classify_cases(link_cases, true, clf, opt.width);
    detail::classify_cases(knot_cases, false, clf, opt.width);
    for (EntryResult& r : report.entries) {
        if (!r.error.empty()) ++report.errors;
        for (CaseResult& c : r.cases) {
            ++report.case_count;
            c.unknown = c.knot && c.knot->unknown();
            c.ok = c.outcome() == to_string(r.entry.expected);
            if (c.unknown) ++report.unknowns;
            else if (!c.ok) ++report.mismatches;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Complement-side enumeration of n-vertex graphs

/// levels[k] holds one complement with k edges per isomorphism class, in
/// canonical order.
inline std::vector<std::vector<Graph>> complement_levels(int n, int k_max) {
    std::vector<std::vector<Graph>> levels;
    levels.push_back({Graph(n)});
    const int pairs = n * (n - 1) / 2;
    for (int k = 1; k <= std::min(k_max, pairs); ++k) {
        std::map<CanonicalKey, Graph> next;
        for (const Graph& c : levels.back())
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (c.adjacent(u, v)) continue;
                    Graph d = c.with_edge(u, v);
                    CanonicalKey key = canonical_key(d);
                    if (!next.contains(key)) next.emplace(std::move(key), std::move(d));
                }
        std::vector<Graph> row;
        for (auto& [key, g] : next) row.push_back(std::move(g));
        levels.push_back(std::move(row));
    }
    return levels;
}

// ---------------------------------------------------------------------------
// Census

struct CensusRow {
    int k = 0;
    int graph_count = 0;
    int knotted_count = 0;
    int unknown_count = 0;
    /// Filled by the stop rule instead of classification.
    bool by_stop_rule = false;
    std::vector<std::string> knotted;
    std::vector<std::string> unknown;
    /// Knotted members with no knotted one-edge supergraph in the previous row.
    std::vector<std::string> orphans;
};

struct CensusClaim {
    /// -1 for the grand total.
    int k = -1;
    int graphs = -1;
    int knotted = -1;
    std::string quote;
};

struct CensusReport {
    int n = 8;
    int k_max = 8;
    std::vector<CensusRow> rows;
    int total_knotted = 0;
    std::vector<CensusClaim> claims;
    std::vector<std::string> summary;
    bool discrepancy = false;
};

inline std::filesystem::path default_census_claims() {
#ifdef KNOTSCAN_DATA_DIR
    return std::filesystem::path(KNOTSCAN_DATA_DIR) / "census_claims.tsv";
#else
    return "data/census_claims.tsv";
#endif
}

inline std::vector<CensusClaim> load_census_claims(const std::filesystem::path& path = default_census_claims()) {
    std::vector<CensusClaim> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, '\t');) f.push_back(x);
        if (f.size() < 4) continue;
        CensusClaim c;
        c.k = f[0] == "total" ? -1 : std::stoi(f[0]);
        c.graphs = f[1] == "-" ? -1 : std::stoi(f[1]);
        c.knotted = f[2] == "-" ? -1 : std::stoi(f[2]);
        c.quote = f[3];
        out.push_back(std::move(c));
    }
    return out;
}

struct CensusOptions {
    int n = 8;
    int k_max = 8;
    int width = default_width();
    std::filesystem::path claims = default_census_claims();
};

inline CensusReport census(Classifier& clf, const CensusOptions& opt = {}) {
    CensusReport report;
    report.n = opt.n;
    report.k_max = opt.k_max;
    const auto levels = complement_levels(opt.n, opt.k_max);
    std::unordered_set<CanonicalKey, CanonicalKeyHash> previous_knotted;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        CensusRow row;
        row.k = static_cast<int>(k);
        row.graph_count = static_cast<int>(levels[k].size());
        const bool stop = k >= 8 && !report.rows.empty() && report.rows.back().knotted_count == 0;
        if (stop) {
            row.by_stop_rule = true;
            report.rows.push_back(std::move(row));
            continue;
        }
        std::vector<Graph> graphs;
        for (const Graph& c : levels[k]) graphs.push_back(complement(c));
        std::vector<CaseResult> cases(graphs.size());
        std::vector<CaseResult*> ptrs;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            cases[i].graph = graphs[i];
            ptrs.push_back(&cases[i]);
        }
        detail::classify_cases(ptrs, false, clf, opt.width);
        std::unordered_set<CanonicalKey, CanonicalKeyHash> knotted_here;
        for (const CaseResult& c : cases) {
            if (c.knot->knotted()) {
                ++row.knotted_count;
                row.knotted.push_back(to_graph6(c.graph));
                knotted_here.insert(canonical_key(c.graph));
                if (k > 0) {
                    bool has_parent = false;
                    for (int u = 0; u < opt.n && !has_parent; ++u)
                        for (int v = u + 1; v < opt.n && !has_parent; ++v)
                            if (!c.graph.adjacent(u, v) && previous_knotted.contains(canonical_key(c.graph.with_edge(u, v))))
                                has_parent = true;
                    if (!has_parent) row.orphans.push_back(to_graph6(c.graph));
                }
            } else if (c.knot->unknown()) {
                ++row.unknown_count;
                row.unknown.push_back(to_graph6(c.graph));
            }
        }
        previous_knotted = std::move(knotted_here);
        report.total_knotted += row.knotted_count;
        report.rows.push_back(std::move(row));
    }

    report.claims = load_census_claims(opt.claims);
    int prose_sum = 0;
    bool prose_complete = true;
    const CensusClaim* total_claim = nullptr;
    for (const CensusClaim& c : report.claims) {
        if (c.k < 0) {
            total_claim = &c;
            continue;
        }
        if (c.knotted >= 0) prose_sum += c.knotted;
        if (c.k >= static_cast<int>(report.rows.size())) {
            prose_complete = false;
            continue;
        }
        const CensusRow& row = report.rows[static_cast<std::size_t>(c.k)];
        auto line = [&](const char* what, int claimed, int computed) {
            std::string s = "k=" + std::to_string(c.k) + " " + what + ": claimed " + std::to_string(claimed) + ", computed " +
                            std::to_string(computed);
            if (claimed != computed) {
                s = "DISCREPANCY " + s + " (\"" + c.quote + "\")";
                report.discrepancy = true;
            }
            report.summary.push_back(s);
        };
        if (c.graphs >= 0) line("graphs", c.graphs, row.graph_count);
        if (c.knotted >= 0) line("knotted", c.knotted, row.knotted_count);
    }
    report.summary.push_back("total knotted: computed " + std::to_string(report.total_knotted));
    if (prose_complete && prose_sum > 0) {
        std::string s = "per-k prose counts sum to " + std::to_string(prose_sum);
        if (total_claim) {
            s += "; stated total is " + std::to_string(total_claim->knotted);
            if (prose_sum != total_claim->knotted) {
                report.discrepancy = true;
                std::string quotes;
                std::vector<std::string> quoted;
                for (const CensusClaim& c : report.claims) {
                    if (c.k < 0 || c.knotted < 0 || std::find(quoted.begin(), quoted.end(), c.quote) != quoted.end()) continue;
                    quoted.push_back(c.quote);
                    quotes += (quotes.empty() ? "" : " / ") + std::string("\"") + c.quote + "\"";
                }
                report.summary.push_back("DISCREPANCY " + s + ": per-k passages " + quotes + " versus total passage \"" +
                                         total_claim->quote + "\"");
                s.clear();
            }
        }
        if (!s.empty()) report.summary.push_back(s);
    }
    if (total_claim && total_claim->knotted != report.total_knotted) {
        report.discrepancy = true;
        report.summary.push_back("DISCREPANCY computed total " + std::to_string(report.total_knotted) + " differs from stated total " +
                                 std::to_string(total_claim->knotted) + " (\"" + total_claim->quote + "\")");
    }
    if (prose_complete && prose_sum > 0 && prose_sum != report.total_knotted) {
        report.discrepancy = true;
        report.summary.push_back("DISCREPANCY computed total " + std::to_string(report.total_knotted) +
                                 " differs from the per-k prose sum " + std::to_string(prose_sum));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Adams sweeps

struct AdamsItem {
    std::string label;
    Graph graph;
    AdamsReport report;
};

struct AdamsSweep {
    std::string scope;
    std::vector<AdamsItem> items;
    int knotted = 0;
    int failures = 0;

    bool passed() const { return failures == 0; }
};

/// Runs the Adams check on every labeled graph the classifier calls knotted.
inline AdamsSweep adams_sweep(const std::string& scope, const std::vector<std::pair<std::string, Graph>>& graphs, const Classifier& clf,
                              int width = default_width()) {
    AdamsSweep sweep;
    sweep.scope = scope;
    sweep.items.resize(graphs.size());
    parallel_for(graphs.size(), width, [&](std::size_t i) {
        AdamsItem& item = sweep.items[i];
        item.label = graphs[i].first;
        item.graph = graphs[i].second;
        item.report.knotting = clf.classify_knotting_local(item.graph);
        if (!item.report.knotting.knotted()) {
            item.report.vacuous = true;
            item.report.passed = true;
            return;
        }
        item.report.passed = true;
        for (int v = 0; v < item.graph.order(); ++v) {
            AdamsDeletion d{v, clf.classify_linking(delete_vertex(item.graph, v))};
            item.report.passed = item.report.passed && d.verdict.linked;
            item.report.deletions.push_back(std::move(d));
        }
    });
    for (const AdamsItem& item : sweep.items) {
        if (!item.report.vacuous) ++sweep.knotted;
        if (!item.report.passed) ++sweep.failures;
    }
    return sweep;
}

/// Graphs of every knotted entry of a knotting table.
inline std::vector<std::pair<std::string, Graph>> knotted_table_graphs(const std::string& id, const TableOptions& opt = {}) {
    std::vector<std::pair<std::string, Graph>> out;
    for (const EntryResult& r : detail::expand_entries(load_table(id, opt.dir), opt.n_max)) {
        if (r.entry.expected != Expectation::knotted) continue;
        if (!r.error.empty()) throw TableError(id + ":" + std::to_string(r.entry.line) + ": " + r.error);
        for (const CaseResult& c : r.cases) out.emplace_back(c.from_wildcard ? c.spec + " " + c.label : c.spec, c.graph);
    }
    return out;
}

inline std::vector<std::pair<std::string, Graph>> census_knotted_graphs(const CensusReport& report) {
    std::vector<std::pair<std::string, Graph>> out;
    for (const CensusRow& row : report.rows)
        for (const std::string& g6 : row.knotted) out.emplace_back("K" + std::to_string(report.n) + "-" + std::to_string(row.k) + "e " + g6, from_graph6(g6));
    return out;
}

// ---------------------------------------------------------------------------
// Edge bounds

enum class Property { linking, knotting };

inline std::string to_string(Property p) { return p == Property::linking ? "linking" : "knotting"; }

struct BoundReport {
    Property property = Property::knotting;
    int n = 0;
    /// -1 when every graph on n vertices has the property (never at n >= 1).
    int max_edges = -1;
    std::optional<Graph> witness;
    int unknown = 0;
};

/// Largest edge count of an n-vertex graph without the property, scanning
/// complements by increasing size and stopping at the first row that has one.
inline BoundReport max_edges_without(Property property, int n, const Classifier& clf, int width = default_width()) {
    BoundReport report;
    report.property = property;
    report.n = n;
    const int pairs = n * (n - 1) / 2;
    std::vector<Graph> row{Graph(n)};
    for (int k = 0; k <= pairs; ++k) {
        if (k > 0) {
            std::map<CanonicalKey, Graph> next;
            for (const Graph& c : row)
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        if (c.adjacent(u, v)) continue;
                        Graph d = c.with_edge(u, v);
                        CanonicalKey key = canonical_key(d);
                        if (!next.contains(key)) next.emplace(std::move(key), std::move(d));
                    }
            row.clear();
            for (auto& [key, g] : next) row.push_back(std::move(g));
        }
        std::vector<int> verdict(row.size(), 0);  // 1 has property, 0 lacks, -1 unknown
        parallel_for(row.size(), width, [&](std::size_t i) {
            const Graph g = complement(row[i]);
            if (property == Property::linking) {
                verdict[i] = clf.classify_linking(g).linked ? 1 : 0;
            } else {
                const KnotVerdict v = clf.classify_knotting_local(g);
                verdict[i] = v.knotted() ? 1 : v.not_knotted() ? 0 : -1;
            }
        });
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (verdict[i] < 0) ++report.unknown;
            if (verdict[i] == 0 && !report.witness) report.witness = complement(row[i]);
        }
        if (report.witness) {
            report.max_edges = pairs - k;
            return report;
        }
    }
    return report;
}

}  // namespace knotscan
