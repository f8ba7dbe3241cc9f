// knotscan command-line front end.
//
// Exit codes: 0 definite result, 1 input error, 2 some verdict Unknown,
// 3 a verification run found mismatches or failures.

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "knotscan/cache.hpp"
#include "knotscan/classifier.hpp"
#include "knotscan/family_lab.hpp"
#include "knotscan/graph6.hpp"
#include "knotscan/notation.hpp"
#include "knotscan/report.hpp"

namespace ks = knotscan;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_unknown = 2;
constexpr int exit_failed = 3;

// Largest graph the classify command accepts.
constexpr int classify_max_vertices = 24;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string format = "text";
    std::string cache;
    int jobs = ks::default_width();
    bool validate = false;
    bool no_cache = false;

    std::filesystem::path cache_dir() const { return cache.empty() ? ks::default_cache_dir() : std::filesystem::path(cache); }
};

void warn(const std::string& s) {
    if (!s.empty()) std::cerr << "warning: " << s << '\n';
}

// Registries and classifier shared by the commands that classify.
struct Engine {
    ks::FamilyRegistry petersen;
    ks::FamilyRegistry mmik;
    std::unique_ptr<ks::Classifier> clf;
    std::filesystem::path store_file;
    bool persist = false;

    explicit Engine(const RunConfig& cfg) {
        if (cfg.no_cache) {
            petersen = ks::petersen_registry();
            mmik = ks::mmik_registry();
        } else {
            const auto dir = cfg.cache_dir();
            auto load = [&](const ks::Graph& seed, ks::MoveSet moves) {
                ks::CachedRegistry c = ks::cached_registry(seed, moves, dir);
                warn(c.warning);
                return std::move(c.registry);
            };
            petersen = load(ks::complete_graph(6), ks::MoveSet::delta_y_and_y_delta);
            mmik = ks::merge_registries("mmik", load(ks::complete_graph(7), ks::MoveSet::delta_y_only),
                                        load(ks::complete_multipartite({3, 3, 1, 1}).graph, ks::MoveSet::delta_y_only));
        }
        clf = std::make_unique<ks::Classifier>(petersen, mmik, ks::ClassifierOptions{cfg.validate});
        if (!cfg.no_cache) {
            persist = true;
            store_file = ks::certified_store_file(cfg.cache_dir(), mmik);
            std::string w;
            ks::load_certified_store(*clf, store_file, &w);
            warn(w);
        }
    }

    void save() const {
        if (!persist) return;
        try {
            ks::save_certified_store(*clf, store_file);
        } catch (const std::exception& e) {
            warn(std::string("could not write certified store: ") + e.what());
        }
    }
};

void emit_json(const ks::json& j) { std::cout << j.dump(2) << '\n'; }

struct Input {
    std::string label;
    ks::Graph graph;
    std::vector<ks::Edge> removed;
    std::optional<ks::PartLabeling> labeling;
};

std::vector<Input> read_inputs(const std::string& spec, const std::string& graph6) {
    std::vector<Input> out;
    if (!spec.empty()) {
        try {
            const ks::GraphExpr expr = ks::parse(spec);
            for (ks::ResolvedCase& c : ks::resolve(expr))
                out.push_back({expr.is_wildcard() ? ks::render(expr) + " " + c.label : ks::render(expr), std::move(c.graph),
                               std::move(c.removed), std::move(c.labeling)});
        } catch (const ks::ParseError& e) {
            throw InputError(std::string("cannot parse spec: ") + e.what());
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
    } else {
        try {
            out.push_back({graph6, ks::from_graph6(graph6), {}, std::nullopt});
        } catch (const std::exception& e) {
            throw InputError(std::string("cannot decode graph6: ") + e.what());
        }
    }
    return out;
}

ks::MoveSet parse_moves(const std::string& s) {
    if (s == "dy") return ks::MoveSet::delta_y_only;
    if (s == "dy,yd" || s == "yd,dy") return ks::MoveSet::delta_y_and_y_delta;
    throw InputError("moves must be dy or dy,yd");
}

int cmd_classify(const RunConfig& cfg, const std::string& spec, const std::string& graph6, const std::string& property) {
    const std::vector<Input> inputs = read_inputs(spec, graph6);
    for (const Input& in : inputs)
        if (in.graph.order() > classify_max_vertices)
            throw InputError("graphs with more than " + std::to_string(classify_max_vertices) + " vertices are not supported");
    Engine engine(cfg);
    ks::Classifier& clf = *engine.clf;
    const bool linking = property == "linking";
    bool unknown = false;
    ks::json all = ks::json::array();
    for (const Input& in : inputs) {
        ks::json j{{"input", in.label}, {"property", property}, {"graph", ks::graph_json(in.graph)}};
        std::string verdict;
        std::optional<ks::MinorWitness> witness;
        if (linking) {
            const ks::LinkVerdict v = clf.classify_linking(in.graph);
            j["result"] = ks::link_json(v);
            verdict = ks::link_text(v);
            witness = v.witness;
        } else {
            const ks::KnotVerdict v = clf.classify_knotting(in.graph);
            j["result"] = ks::knot_json(v);
            verdict = ks::knot_text(v);
            unknown = unknown || v.unknown();
            witness = v.witness ? v.witness : v.certificate ? v.certificate->witness : std::nullopt;
        }
        if (cfg.format == "json") {
            all.push_back(std::move(j));
        } else if (cfg.format == "dot") {
            std::cout << "// " << in.label << ": " << verdict << '\n'
                      << ks::to_dot(in.graph, in.label, in.removed, in.labeling ? &*in.labeling : nullptr);
        } else {
            std::cout << in.label << '\t' << property << '\t' << verdict << '\n';
            if (witness) std::cout << "  model " << ks::witness_text(*witness) << '\n';
        }
    }
    if (cfg.format == "json") emit_json(inputs.size() == 1 ? all.front() : all);
    engine.save();
    return unknown ? exit_unknown : exit_ok;
}

int cmd_family(const RunConfig& cfg, const std::string& seed_spec, const std::string& seed_graph6, const std::string& moves_text) {
    const std::vector<Input> inputs = read_inputs(seed_spec, seed_graph6);
    if (inputs.size() != 1) throw InputError("the seed must be a single graph");
    const ks::MoveSet moves = parse_moves(moves_text);
    ks::FamilyRegistry reg;
    try {
        if (cfg.no_cache) {
            reg = ks::build_registry(inputs.front().graph, moves);
        } else {
            ks::CachedRegistry c = ks::cached_registry(inputs.front().graph, moves, cfg.cache_dir());
            warn(c.warning);
            reg = std::move(c.registry);
        }
    } catch (const ks::ClosureLimitError& e) {
        throw InputError(e.what());
    }
    if (cfg.format == "json") {
        emit_json(ks::registry_json(reg));
    } else if (cfg.format == "dot") {
        for (const auto& m : reg.members) std::cout << ks::to_dot(m.graph, m.name);
    } else {
        std::cout << reg.provenance << ": " << reg.size() << " members\n";
        for (const auto& m : reg.members) {
            std::string path;
            for (const auto& s : m.path) path += (path.empty() ? "" : " ") + s.to_string();
            std::cout << m.name << (m.positional_name ? "*" : "") << '\t' << m.graph.order() << '\t' << m.graph.size() << '\t'
                      << ks::detail::degree_string(m.degrees) << '\t' << ks::to_graph6(m.graph) << '\t' << (path.empty() ? "-" : path)
                      << '\n';
        }
    }
    return exit_ok;
}

int cmd_tables(const RunConfig& cfg, const std::string& table, int n_max) {
    std::vector<std::string> ids;
    if (table == "all") ids = ks::table_ids();
    else if (std::find(ks::table_ids().begin(), ks::table_ids().end(), table) != ks::table_ids().end()) ids = {table};
    else throw InputError("unknown table " + table);
    Engine engine(cfg);
    ks::TableOptions opt;
    opt.n_max = n_max;
    opt.width = cfg.jobs;
    bool passed = true;
    bool unknown = false;
    ks::json all = ks::json::array();
    for (const std::string& id : ids) {
        ks::TableReport r;
        try {
            r = ks::table_check(id, *engine.clf, opt);
        } catch (const ks::TableError& e) {
            throw InputError(e.what());
        }
        passed = passed && r.passed();
        unknown = unknown || r.unknowns > 0;
        if (cfg.format == "json") all.push_back(ks::table_json(r));
        else std::cout << ks::table_text(r);
    }
    if (cfg.format == "json") emit_json(all);
    engine.save();
    if (unknown) return exit_unknown;
    return passed ? exit_ok : exit_failed;
}

int cmd_census(const RunConfig& cfg, int n, int k_max) {
    if (n < 1 || n > 10) throw InputError("census supports 1 to 10 vertices");
    Engine engine(cfg);
    ks::CensusOptions opt;
    opt.n = n;
    opt.k_max = k_max;
    opt.width = cfg.jobs;
    if (n != 8) opt.claims = std::filesystem::path();
    const ks::CensusReport r = ks::census(*engine.clf, opt);
    if (cfg.format == "json") emit_json(ks::census_json(r));
    else std::cout << ks::census_text(r);
    engine.save();
    for (const auto& row : r.rows)
        if (row.unknown_count > 0) return exit_unknown;
    return exit_ok;
}

int cmd_adams(const RunConfig& cfg, const std::string& scope, int n_max) {
    std::vector<std::string> tables;
    bool with_census = false;
    if (scope == "partite") tables = {"ik0"};
    else if (scope == "deficient1") tables = {"ik1"};
    else if (scope == "deficient2") tables = {"ik2", "ik2cont"};
    else if (scope == "census") with_census = true;
    else if (scope == "all") tables = {"ik0", "ik1", "ik2", "ik2cont"}, with_census = true;
    else if (scope == "ik0" || scope == "ik1" || scope == "ik2" || scope == "ik2cont") tables = {scope};
    else throw InputError("unknown scope " + scope + " (partite, deficient1, deficient2, census, all, or a knotting table id)");
    Engine engine(cfg);
    ks::TableOptions opt;
    opt.n_max = n_max;
    opt.width = cfg.jobs;
    std::vector<ks::AdamsSweep> sweeps;
    for (const std::string& id : tables) sweeps.push_back(ks::adams_sweep(id, ks::knotted_table_graphs(id, opt), *engine.clf, cfg.jobs));
    if (with_census) {
        ks::CensusOptions copt;
        copt.width = cfg.jobs;
        const ks::CensusReport r = ks::census(*engine.clf, copt);
        sweeps.push_back(ks::adams_sweep("census", ks::census_knotted_graphs(r), *engine.clf, cfg.jobs));
    }
    bool passed = true;
    ks::json all = ks::json::array();
    for (const auto& s : sweeps) {
        passed = passed && s.passed();
        if (cfg.format == "json") all.push_back(ks::adams_json(s));
        else std::cout << ks::adams_text(s);
    }
    if (cfg.format == "json") emit_json(all);
    engine.save();
    return passed ? exit_ok : exit_failed;
}

int cmd_bounds(const RunConfig& cfg, const std::string& property, const std::vector<int>& sizes) {
    for (int n : sizes)
        if (n < 1 || n > 9) throw InputError("bounds supports 1 to 9 vertices");
    Engine engine(cfg);
    const ks::Property p = property == "linking" ? ks::Property::linking : ks::Property::knotting;
    bool unknown = false;
    ks::json all = ks::json::array();
    for (int n : sizes) {
        const ks::BoundReport b = ks::max_edges_without(p, n, *engine.clf, cfg.jobs);
        unknown = unknown || b.unknown > 0;
        const ks::json j = ks::bound_json(b);
        if (cfg.format == "json") {
            all.push_back(j);
        } else if (cfg.format == "dot") {
            if (b.witness)
                std::cout << "// " << property << " n=" << n << " max edges " << b.max_edges << '\n'
                          << ks::to_dot(*b.witness, property + "-" + std::to_string(n));
        } else {
            std::cout << property << "\tn=" << n << "\tmax_edges=" << b.max_edges << "\treference=" << j["reference_bound"].get<int>()
                      << (j["matches_reference"].get<bool>() ? "\tmatch" : "\tdiffers");
            if (b.witness) std::cout << "\twitness=" << ks::to_graph6(*b.witness);
            if (b.unknown) std::cout << "\tunknown=" << b.unknown;
            std::cout << '\n';
        }
    }
    if (cfg.format == "json") emit_json(all);
    return unknown ? exit_unknown : exit_ok;
}

int cmd_encode(const RunConfig& cfg, const std::string& spec) {
    const std::vector<Input> inputs = read_inputs(spec, "");
    ks::json all = ks::json::array();
    for (const Input& in : inputs) {
        if (cfg.format == "json") {
            all.push_back({{"input", in.label}, {"graph6", ks::to_graph6(in.graph)}});
        } else if (cfg.format == "dot") {
            std::cout << ks::to_dot(in.graph, in.label, in.removed, in.labeling ? &*in.labeling : nullptr);
        } else {
            if (inputs.size() > 1) std::cout << in.label << '\t';
            std::cout << ks::to_graph6(in.graph) << '\n';
        }
    }
    if (cfg.format == "json") emit_json(all);
    return exit_ok;
}

int cmd_decode(const RunConfig& cfg, const std::string& graph6) {
    const Input in = read_inputs("", graph6).front();
    if (cfg.format == "json") {
        emit_json(ks::graph_json(in.graph));
    } else if (cfg.format == "dot") {
        std::cout << ks::to_dot(in.graph, graph6);
    } else {
        std::cout << "vertices " << in.graph.order() << "\nedges " << in.graph.size() << '\n';
        for (const ks::Edge& e : in.graph.edges()) std::cout << e.u << ' ' << e.v << '\n';
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knotscan: intrinsic linking and knotting of deficient multipartite graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--cache", cfg.cache, "Cache directory (default $KNOTSCAN_CACHE or ~/.cache/knotscan)");
    app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write cache files");
    app.add_option("-j,--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--validate", cfg.validate, "Cross-check fast paths against exhaustive searches");

    std::string spec, graph6, property = "knotting";
    auto* classify = app.add_subcommand("classify", "Classify a graph for intrinsic linking or knotting");
    auto* spec_opt = classify->add_option("--spec", spec, "Graph in K{...} notation");
    auto* g6_opt = classify->add_option("--graph6", graph6, "Graph in graph6 format");
    spec_opt->excludes(g6_opt);
    classify->add_option("--property", property)->check(CLI::IsMember({"linking", "knotting"}));

    std::string seed_spec, seed_graph6, moves = "dy";
    auto* family = app.add_subcommand("family", "Closure of a seed graph under triangle-Y moves");
    auto* seed_opt = family->add_option("--seed", seed_spec, "Seed in K{...} notation");
    auto* seed_g6_opt = family->add_option("--seed-graph6", seed_graph6, "Seed in graph6 format");
    seed_opt->excludes(seed_g6_opt);
    family->add_option("--moves", moves, "dy or dy,yd");

    std::string table = "all";
    int n_max = 6;
    auto* tables = app.add_subcommand("tables", "Check the table data against the classifier");
    tables->add_option("--table", table, "Table id or all");
    tables->add_option("--n-max", n_max, "Largest n substituted into n rows")->check(CLI::Range(1, 12));

    int vertices = 8, k_max = 8;
    auto* census = app.add_subcommand("census", "Knotted graphs among K_n minus k edges");
    census->add_option("--vertices", vertices);
    census->add_option("--k-max", k_max)->check(CLI::NonNegativeNumber);

    std::string scope = "all";
    auto* adams = app.add_subcommand("adams", "Check that deleting any vertex of a knotted graph leaves it linked");
    adams->add_option("--scope", scope, "partite, deficient1, deficient2, census, all, or a knotting table id");
    adams->add_option("--n-max", n_max)->check(CLI::Range(1, 12));

    std::string bound_property = "knotting";
    std::vector<int> bound_sizes;
    auto* bounds = app.add_subcommand("bounds", "Most edges of an n-vertex graph without the property");
    bounds->add_option("--property", bound_property)->check(CLI::IsMember({"linking", "knotting"}));
    bounds->add_option("--vertices", bound_sizes)->required();

    std::string encode_spec;
    auto* encode = app.add_subcommand("encode", "Print graph6 for a K{...} expression");
    encode->add_option("spec", encode_spec)->required();

    std::string decode_g6;
    auto* decode = app.add_subcommand("decode", "Print the edges of a graph6 string");
    decode->add_option("graph6", decode_g6)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*classify) {
            if (spec.empty() == graph6.empty()) throw InputError("give exactly one of --spec or --graph6");
            return cmd_classify(cfg, spec, graph6, property);
        }
        if (*family) {
            if (seed_spec.empty() == seed_graph6.empty()) throw InputError("give exactly one of --seed or --seed-graph6");
            return cmd_family(cfg, seed_spec, seed_graph6, moves);
        }
        if (*tables) return cmd_tables(cfg, table, n_max);
        if (*census) return cmd_census(cfg, vertices, k_max);
        if (*adams) return cmd_adams(cfg, scope, n_max);
        if (*bounds) return cmd_bounds(cfg, bound_property, bound_sizes);
        if (*encode) return cmd_encode(cfg, encode_spec);
        if (*decode) return cmd_decode(cfg, decode_g6);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const ks::ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return exit_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
