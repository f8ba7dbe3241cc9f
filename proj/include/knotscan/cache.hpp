#pragma once

// On-disk cache for family registries and the certified-not-knotted store.
// Files are JSON lines named by a hash of their inputs; anything unreadable
// or inconsistent is rebuilt.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "json.hpp"

#include "classifier.hpp"
#include "graph6.hpp"
#include "ty_moves.hpp"

namespace knotscan {

inline constexpr const char* engine_version = "knotscan-1";

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string registry_hash(const Graph& seed, MoveSet moves) {
    return hex64(fnv1a64(to_graph6(canonical_form(seed).graph()) + '|' + to_string(moves) + '|' + engine_version));
}

/// KNOTSCAN_CACHE, else $XDG_CACHE_HOME/knotscan, else ~/.cache/knotscan.
inline std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("KNOTSCAN_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "knotscan";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "knotscan";
    return ".knotscan-cache";
}

/// Named registry for the three known seeds, positional names otherwise.
inline FamilyRegistry build_registry(const Graph& seed, MoveSet moves) {
    if (moves == MoveSet::delta_y_and_y_delta && is_isomorphic(seed, complete_graph(6))) return build_petersen_registry();
    if (moves == MoveSet::delta_y_only && is_isomorphic(seed, complete_graph(7))) return build_k7_registry();
    if (moves == MoveSet::delta_y_only && is_isomorphic(seed, complete_multipartite({3, 3, 1, 1}).graph)) return build_k3311_registry();
    FamilyRegistry reg = closure(seed, moves);
    reg.name = "closure";
    reg.provenance = "closure of " + to_graph6(seed) + " under " + to_string(moves);
    detail::name_rows_positionally(reg);
    return reg;
}

enum class CacheStatus { hit, built, rebuilt };

struct CachedRegistry {
    FamilyRegistry registry;
    CacheStatus status = CacheStatus::built;
    std::filesystem::path file;
    std::string warning;
};

namespace detail {

inline std::optional<MoveStep> parse_move(const std::string& s) {
    MoveStep step;
    std::string body;
    if (s.rfind("dy(", 0) == 0) step.kind = MoveKind::delta_y;
    else if (s.rfind("yd(", 0) == 0) step.kind = MoveKind::y_delta;
    else return std::nullopt;
    if (s.back() != ')') return std::nullopt;
    body = s.substr(3, s.size() - 4);
    std::stringstream ss(body);
    for (std::string x; std::getline(ss, x, ',');) step.vertices.push_back(std::stoi(x));
    return step;
}

inline void write_registry(const FamilyRegistry& reg, const std::filesystem::path& file) {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        for (const auto& m : reg.members) {
            nlohmann::ordered_json path = nlohmann::ordered_json::array();
            for (const auto& s : m.path) path.push_back(s.to_string());
            nlohmann::ordered_json line{{"name", m.name},
                                        {"graph6", to_graph6(m.graph)},
                                        {"degseq", m.degrees},
                                        {"moves_from_seed", path},
                                        {"positional", m.positional_name}};
            out << line.dump() << '\n';
        }
    }
    std::filesystem::rename(tmp, file);
}

// Reads and fully re-checks a cached registry: every member must decode,
// match its degree sequence and be reproduced by replaying its moves.
inline std::optional<FamilyRegistry> read_registry(const std::filesystem::path& file, const FamilyRegistry& shape, std::string& why) {
    std::ifstream in(file);
    if (!in) {
        why = "missing";
        return std::nullopt;
    }
    FamilyRegistry reg = shape;
    reg.members.clear();
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            FamilyMember m;
            m.name = j.at("name").get<std::string>();
            m.positional_name = j.value("positional", false);
            m.graph = from_graph6(j.at("graph6").get<std::string>());
            m.degrees = j.at("degseq").get<std::vector<int>>();
            if (m.degrees != degree_sequence(m.graph)) throw std::runtime_error("degree sequence mismatch for " + m.name);
            Graph replay = reg.seed;
            for (const auto& s : j.at("moves_from_seed")) {
                auto step = parse_move(s.get<std::string>());
                if (!step) throw std::runtime_error("bad move " + s.get<std::string>());
                m.path.push_back(*step);
                replay = apply_move(replay, *step);
            }
            m.key = canonical_key(m.graph);
            if (canonical_key(replay) != m.key) throw std::runtime_error("move path does not reproduce " + m.name);
            reg.members.push_back(std::move(m));
        }
    } catch (const std::exception& e) {
        why = e.what();
        return std::nullopt;
    }
    if (reg.members.size() != shape.members.size()) {
        why = "member count differs";
        return std::nullopt;
    }
    for (std::size_t i = 0; i < reg.members.size(); ++i)
        if (reg.members[i].key != shape.members[i].key) {
            why = "member set differs";
            return std::nullopt;
        }
    return reg;
}

}  // namespace detail

/// Loads a registry from the cache directory, rebuilding (with a warning)
/// when the file is absent, stale or corrupt. The cache only saves naming and
/// path bookkeeping; membership is always recomputed and compared.
inline CachedRegistry cached_registry(const Graph& seed, MoveSet moves, const std::filesystem::path& dir) {
    CachedRegistry out;
    out.file = dir / ("registry-" + registry_hash(seed, moves) + ".jsonl");
    FamilyRegistry fresh = build_registry(seed, moves);
    const bool existed = std::filesystem::exists(out.file);
    std::string why;
    if (existed) {
        if (auto cached = detail::read_registry(out.file, fresh, why)) {
            out.registry = std::move(*cached);
            out.status = CacheStatus::hit;
            return out;
        }
        out.warning = "cache file " + out.file.string() + " is unusable (" + why + "); regenerating";
    }
    out.registry = std::move(fresh);
    out.status = existed ? CacheStatus::rebuilt : CacheStatus::built;
    try {
        detail::write_registry(out.registry, out.file);
    } catch (const std::exception& e) {
        out.warning += (out.warning.empty() ? "" : "; ") + std::string("could not write cache: ") + e.what();
    }
    return out;
}

inline std::filesystem::path certified_store_file(const std::filesystem::path& dir, const FamilyRegistry& mmik) {
    std::string basis = engine_version;
    for (const auto& m : mmik.members) basis += '|' + to_graph6(canonical_form(m.graph).graph());
    return dir / ("certified-" + hex64(fnv1a64(basis)) + ".jsonl");
}

/// Adds previously certified graphs to the classifier's store. Each one is
/// re-certified before use; returns the number accepted.
inline std::size_t load_certified_store(Classifier& clf, const std::filesystem::path& file, std::string* warning = nullptr) {
    std::ifstream in(file);
    if (!in) return 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const Graph g = from_graph6(nlohmann::json::parse(line).at("graph6").get<std::string>());
            if (clf.classify_knotting_local(g).not_knotted()) {
                clf.store().add(g);
                ++accepted;
            } else {
                ++rejected;
            }
        } catch (const std::exception&) {
            ++rejected;
        }
    }
    if (rejected && warning) *warning = std::to_string(rejected) + " cached certified entries were rejected";
    return accepted;
}

inline void save_certified_store(const Classifier& clf, const std::filesystem::path& file) {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        for (const Graph& g : clf.store().snapshot()) out << nlohmann::json{{"graph6", to_graph6(g)}}.dump() << '\n';
    }
    std::filesystem::rename(tmp, file);
}

}  // namespace knotscan
