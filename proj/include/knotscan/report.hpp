#pragma once

// JSON, text and DOT renderings of graphs, witnesses, verdicts and reports.

#include <sstream>
#include <string>

#include "json.hpp"

#include "classifier.hpp"
#include "family_lab.hpp"
#include "graph6.hpp"
#include "ty_moves.hpp"

namespace knotscan {

using json = nlohmann::ordered_json;

inline json mask_json(VertexMask m) {
    json out = json::array();
    for_each_bit(m, [&](int v) { out.push_back(v); });
    return out;
}

/// {"model": {"<h vertex>": [g vertices...]}}
inline json witness_json(const MinorWitness& w) {
    json model = json::object();
    for (std::size_t v = 0; v < w.branch_sets.size(); ++v) model[std::to_string(v)] = mask_json(w.branch_sets[v]);
    return json{{"model", model}};
}

inline MinorWitness witness_from_json(const json& j) {
    const json& model = j.at("model");
    MinorWitness w;
    w.branch_sets.assign(model.size(), 0);
    for (auto it = model.begin(); it != model.end(); ++it) {
        const std::size_t v = std::stoul(it.key());
        if (v >= w.branch_sets.size()) throw std::invalid_argument("witness model keys must be 0..n-1");
        for (int x : it.value()) {
            if (x < 0 || x >= max_vertices) throw std::invalid_argument("witness vertex out of range");
            w.branch_sets[v] |= bit(x);
        }
    }
    return w;
}

inline json graph_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return json{{"graph6", to_graph6(g)}, {"vertices", g.order()}, {"edges", g.size()}, {"edge_list", edges}};
}

inline json link_json(const LinkVerdict& v) {
    json j{{"verdict", v.linked ? "Linked" : "NotLinked"}};
    if (v.linked) {
        j["member"] = v.member;
        j["witness"] = witness_json(*v.witness);
    } else if (v.apex) {
        j["apex"] = *v.apex;
    } else {
        j["exhaustive"] = true;
    }
    return j;
}

inline json certificate_json(const Certificate& c) {
    json j{{"kind", to_string(c.kind)}};
    switch (c.kind) {
        case Certificate::Kind::pair_deletion_planar: j["pair"] = {c.pair.first, c.pair.second}; break;
        case Certificate::Kind::proper_minor_of_mmik: j["member"] = c.member; break;
        case Certificate::Kind::minor_of_certified: j["certified"] = c.certified; break;
    }
    if (c.witness) j["witness"] = witness_json(*c.witness);
    return j;
}

inline json knot_json(const KnotVerdict& v) {
    json j{{"verdict", to_string(v.kind)}};
    if (v.knotted()) {
        j["member"] = v.member;
        j["witness"] = witness_json(*v.witness);
    }
    if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
    return j;
}

inline std::string link_text(const LinkVerdict& v) {
    if (v.linked) return "Linked (minor " + v.member + ")";
    if (v.apex) return "NotLinked (apex vertex " + std::to_string(*v.apex) + ")";
    return "NotLinked (no Petersen-family minor)";
}

inline std::string knot_text(const KnotVerdict& v) {
    if (v.knotted()) return "Knotted (minor " + v.member + ")";
    if (!v.not_knotted()) return "Unknown";
    const Certificate& c = *v.certificate;
    switch (c.kind) {
        case Certificate::Kind::pair_deletion_planar:
            return "NotKnotted (PairDeletionPlanar " + std::to_string(c.pair.first) + "," + std::to_string(c.pair.second) + ")";
        case Certificate::Kind::proper_minor_of_mmik: return "NotKnotted (ProperMinorOfMMIK " + c.member + ")";
        case Certificate::Kind::minor_of_certified: return "NotKnotted (MinorOfCertified " + c.certified + ")";
    }
    return "NotKnotted";
}

inline std::string witness_text(const MinorWitness& w) {
    std::string out;
    for (std::size_t v = 0; v < w.branch_sets.size(); ++v) {
        out += (v ? " " : "") + std::to_string(v) + ":{";
        bool first = true;
        for_each_bit(w.branch_sets[v], [&](int x) {
            out += (first ? "" : ",") + std::to_string(x);
            first = false;
        });
        out += '}';
    }
    return out;
}

/// Graphviz rendering; `removed` edges are drawn dashed and grey.
inline std::string to_dot(const Graph& g, const std::string& name = "G", const std::vector<Edge>& removed = {},
                          const PartLabeling* labels = nullptr) {
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    for (int v = 0; v < g.order(); ++v) {
        out << "  " << v;
        if (labels && labels->vertex_count() == g.order()) out << " [label=\"" << labels->reference(v) << "\"]";
        out << ";\n";
    }
    for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
    if (!removed.empty()) {
        out << "  // removed edges\n";
        for (const Edge& e : removed) out << "  " << e.u << " -- " << e.v << " [style=dashed, color=gray, constraint=false];\n";
    }
    out << "}\n";
    return out.str();
}

inline json registry_json(const FamilyRegistry& reg) {
    json members = json::array();
    for (const auto& m : reg.members) {
        json path = json::array();
        for (const auto& s : m.path) path.push_back(s.to_string());
        members.push_back({{"name", m.name},
                           {"positional", m.positional_name},
                           {"vertices", m.graph.order()},
                           {"edges", m.graph.size()},
                           {"degseq", m.degrees},
                           {"graph6", to_graph6(m.graph)},
                           {"moves_from_seed", path}});
    }
    return json{{"name", reg.name},
                {"seed", to_graph6(reg.seed)},
                {"moves", to_string(reg.moves)},
                {"provenance", reg.provenance},
                {"size", reg.size()},
                {"members", members}};
}

inline json table_json(const TableReport& r) {
    json entries = json::array();
    for (const EntryResult& e : r.entries) {
        json cases = json::array();
        for (const CaseResult& c : e.cases) {
            json cj{{"label", c.label}, {"graph6", to_graph6(c.graph)}, {"orbit_size", c.orbit_size}, {"outcome", c.outcome()}, {"ok", c.ok}};
            if (c.link) cj["linking"] = link_json(*c.link);
            if (c.knot) cj["knotting"] = knot_json(*c.knot);
            cases.push_back(std::move(cj));
        }
        json ej{{"line", e.entry.line}, {"column", e.entry.column}, {"spec", e.entry.spec}, {"expected", to_string(e.entry.expected)}};
        if (e.entry.parametrized()) ej["n"] = e.n;
        if (!e.error.empty()) ej["error"] = e.error;
        ej["ok"] = e.ok();
        ej["cases"] = std::move(cases);
        entries.push_back(std::move(ej));
    }
    return json{{"table", r.table},     {"n_max", r.n_max},         {"cases", r.case_count}, {"mismatches", r.mismatches},
                {"unknown", r.unknowns}, {"errors", r.errors},       {"passed", r.passed()},  {"entries", entries}};
}

inline std::string table_text(const TableReport& r) {
    std::ostringstream out;
    for (const EntryResult& e : r.entries) {
        out << r.table << ':' << e.entry.line << '\t' << (e.entry.parametrized() ? e.entry.instantiate(e.n) : e.entry.spec) << '\t'
            << to_string(e.entry.expected) << '\t';
        if (!e.error.empty()) {
            out << "ERROR " << e.error << '\n';
            continue;
        }
        out << (e.ok() ? "ok" : "MISMATCH") << " (" << e.cases.size() << (e.cases.size() == 1 ? " case" : " cases") << ")";
        if (e.entry.parametrized()) out << " [n=" << e.n << ", verified for n <= " << r.n_max << "]";
        out << '\n';
        for (const CaseResult& c : e.cases) {
            if (c.ok && e.cases.size() == 1) continue;
            out << "    " << (c.label.empty() ? "(complete)" : c.label) << '\t' << (c.ok ? "ok" : "MISMATCH") << '\t'
                << (c.link ? link_text(*c.link) : knot_text(*c.knot)) << '\n';
        }
    }
    out << r.table << ": " << r.entries.size() << " entries, " << r.case_count << " cases, " << r.mismatches << " mismatches, "
        << r.unknowns << " unknown, " << r.errors << " errors -> " << (r.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

inline json census_json(const CensusReport& r) {
    json rows = json::array();
    for (const CensusRow& row : r.rows)
        rows.push_back({{"k", row.k},
                        {"graphs", row.graph_count},
                        {"knotted", row.knotted_count},
                        {"unknown", row.unknown_count},
                        {"by_stop_rule", row.by_stop_rule},
                        {"knotted_graph6", row.knotted},
                        {"unknown_graph6", row.unknown},
                        {"orphans", row.orphans}});
    return json{{"vertices", r.n}, {"k_max", r.k_max}, {"rows", rows}, {"total_knotted", r.total_knotted},
                {"discrepancy", r.discrepancy}, {"summary", r.summary}};
}

inline std::string census_text(const CensusReport& r) {
    std::ostringstream out;
    out << "k\tgraphs\tknotted\tunknown\n";
    for (const CensusRow& row : r.rows) {
        out << row.k << '\t' << row.graph_count << '\t' << row.knotted_count << '\t' << row.unknown_count;
        if (row.by_stop_rule) out << "\t(stop rule)";
        out << '\n';
        for (const std::string& g : row.knotted) out << "  knotted " << g << '\n';
        for (const std::string& g : row.unknown) out << "  UNKNOWN " << g << '\n';
        for (const std::string& g : row.orphans) out << "  ORPHAN " << g << '\n';
    }
    for (const std::string& s : r.summary) out << s << '\n';
    return out.str();
}

inline json adams_json(const AdamsSweep& s) {
    json items = json::array();
    for (const AdamsItem& item : s.items) {
        json dels = json::array();
        for (const AdamsDeletion& d : item.report.deletions) dels.push_back({{"vertex", d.vertex}, {"linking", link_json(d.verdict)}});
        items.push_back({{"label", item.label},
                         {"graph6", to_graph6(item.graph)},
                         {"knotting", knot_json(item.report.knotting)},
                         {"vacuous", item.report.vacuous},
                         {"passed", item.report.passed},
                         {"deletions", dels}});
    }
    return json{{"scope", s.scope}, {"knotted", s.knotted}, {"failures", s.failures}, {"passed", s.passed()}, {"items", items}};
}

inline std::string adams_text(const AdamsSweep& s) {
    std::ostringstream out;
    for (const AdamsItem& item : s.items) {
        out << (item.report.vacuous ? "vacuous" : item.report.passed ? "pass" : "FAIL") << '\t' << item.label << '\n';
        if (!item.report.passed)
            for (const AdamsDeletion& d : item.report.deletions)
                if (!d.verdict.linked) out << "    delete " << d.vertex << ": " << link_text(d.verdict) << '\n';
    }
    out << s.scope << ": " << s.knotted << " knotted graphs, " << s.failures << " failures -> " << (s.passed() ? "PASS" : "FAIL")
        << '\n';
    return out.str();
}

inline json bound_json(const BoundReport& b) {
    json j{{"property", to_string(b.property)}, {"vertices", b.n}, {"max_edges", b.max_edges}, {"unknown", b.unknown}};
    if (b.witness) j["witness"] = graph_json(*b.witness);
    const int sachs = b.property == Property::knotting ? 5 * b.n - 15 : 4 * b.n - 10;
    j["reference_bound"] = sachs;
    j["matches_reference"] = b.max_edges == sachs;
    return j;
}

}  // namespace knotscan
