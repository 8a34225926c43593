#ifndef HIA_EXPORT_HPP
#define HIA_EXPORT_HPP

#include "sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hia {

struct ExportError : Error {
    using Error::Error;
};

struct SimSummary {
    SimReport report;
    std::string corner;          // "primary", "secondary" or "alternating"
    std::uint64_t seed = 0;
    std::string placement;
};

struct RelationSummary {
    std::string table_case;
    std::optional<Subcase> hybrid1_subcase, hybrid2_subcase;
    RegionRelations relations;
};

struct ExportDocument {
    DofRegion region;
    std::optional<RelationSummary> relations;
    std::optional<SimSummary> sim;
};

inline nlohmann::json rational_json(const Rational& r) {
    return nlohmann::json::array({r.numerator(), r.denominator()});
}

inline Rational rational_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw std::invalid_argument("rational must be an [numerator, denominator] integer pair");
    }
    auto den = j[1].get<std::int64_t>();
    if (den <= 0) {
        throw std::invalid_argument("rational denominator must be positive");
    }
    Rational r(j[0].get<std::int64_t>(), den);
    if (r.denominator() != den) {
        throw std::invalid_argument("rational is not in reduced form");
    }
    return r;
}

inline RelationSummary summarize_relations(const AntennaConfig& cfg) {
    auto rc = classify(cfg);
    return RelationSummary{to_string(rc.row), rc.hybrid1, rc.hybrid2, relations(cfg)};
}

inline nlohmann::json to_json(const ExportDocument& doc) {
    using nlohmann::json;
    const auto& r = doc.region;
    json j;
    j["config"] = {{"m1", r.cfg.m1}, {"m2", r.cfg.m2}, {"n1", r.cfg.n1}, {"n2", r.cfg.n2}, {"swapped", r.cfg.swapped}};
    j["model"] = to_string(r.model);
    j["bounds"] = json::array();
    for (const auto& b : r.bounds) {
        j["bounds"].push_back({{"label", to_string(b.label)}, {"a1", rational_json(b.a1)}, {"a2", rational_json(b.a2)}, {"c", rational_json(b.c)}});
    }
    j["vertices"] = json::array();
    for (const auto& v : r.vertices) {
        j["vertices"].push_back(json::array({rational_json(v.d1), rational_json(v.d2)}));
    }
    if (doc.relations) {
        const auto& rel = *doc.relations;
        json o;
        o["case"] = rel.table_case;
        if (rel.hybrid1_subcase) o["hybrid1_subcase"] = to_string(*rel.hybrid1_subcase);
        if (rel.hybrid2_subcase) o["hybrid2_subcase"] = to_string(*rel.hybrid2_subcase);
        o["delayed_vs_hybrid1"] = to_string(rel.relations.d_h1);
        o["hybrid1_vs_instantaneous"] = to_string(rel.relations.h1_i);
        o["delayed_vs_hybrid2"] = to_string(rel.relations.d_h2);
        o["hybrid2_vs_instantaneous"] = to_string(rel.relations.h2_i);
        o["summary"] = to_string(rel.relations);
        j["relations"] = o;
    }
    if (doc.sim) {
        const auto& s = *doc.sim;
        j["sim"] = {
            {"trials", s.report.trials},
            {"successes", s.report.successes},
            {"failures", s.report.failures},
            {"resampled_degenerate", s.report.resampled_degenerate},
            {"max_rel_error", s.report.max_rel_error},
            {"min_conditioning", s.report.min_conditioning},
            {"achieved_dof", json::array({rational_json(s.report.achieved_dof.d1), rational_json(s.report.achieved_dof.d2)})},
            {"corner", s.corner},
            {"seed", s.seed},
            {"placement", s.placement},
        };
    }
    return j;
}

// Reads back the region part of a document; relations and sim are informational.
inline DofRegion region_from_json(const nlohmann::json& j) {
    try {
        DofRegion r;
        const auto& c = j.at("config");
        r.cfg = AntennaConfig{c.at("m1").get<int>(), c.at("m2").get<int>(), c.at("n1").get<int>(), c.at("n2").get<int>(), c.value("swapped", false)};
        r.model = parse_region_model(j.at("model").get<std::string>());
        for (const auto& b : j.at("bounds")) {
            r.bounds.push_back(LinearBound{rational_from_json(b.at("a1")), rational_from_json(b.at("a2")), rational_from_json(b.at("c")),
                parse_bound_label(b.at("label").get<std::string>())});
        }
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2) {
                throw std::invalid_argument("vertex must be a pair of rationals");
            }
            r.vertices.push_back(DofPoint{rational_from_json(v[0]), rational_from_json(v[1])});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed region document: ") + e.what());
    }
}

inline bool same_region(const DofRegion& a, const DofRegion& b) {
    return a.cfg == b.cfg && a.model == b.model && a.bounds == b.bounds && a.vertices == b.vertices;
}

// Printed form used by the CLI; parse_region_listing inverts it.
inline std::string region_listing(const DofRegion& r) {
    std::ostringstream out;
    out << "region " << to_string(r.cfg) << " " << to_string(r.model) << "\n";
    for (const auto& b : r.bounds) {
        out << "bound " << to_string(b) << "\n";
    }
    for (const auto& v : r.vertices) {
        out << "vertex " << to_string(v) << "\n";
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + sep.size();
    }
    return out;
}

inline AntennaConfig parse_tuple(std::string s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw std::invalid_argument("expected a parenthesized tuple: " + s);
    }
    auto parts = split(s.substr(1, s.size() - 2), ",");
    if (parts.size() != 4) {
        throw std::invalid_argument("expected four antenna counts: " + s);
    }
    return AntennaConfig{std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2]), std::stoi(parts[3]), false};
}

}

inline DofRegion parse_region_listing(const std::string& text) {
    DofRegion r;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("region ", 0) == 0) {
            std::istringstream ls(line.substr(7));
            std::string tuple, model;
            ls >> tuple >> model;
            r.cfg = detail::parse_tuple(tuple);
            r.model = parse_region_model(model);
            header = true;
        } else if (line.rfind("bound ", 0) == 0) {
            auto rest = line.substr(6);
            auto colon = rest.find(": ");
            if (colon == std::string::npos) throw std::invalid_argument("bound line without label: " + line);
            LinearBound b{Rational(0), Rational(0), Rational(0), parse_bound_label(rest.substr(0, colon))};
            auto sides = detail::split(rest.substr(colon + 2), " <= ");
            if (sides.size() != 2) throw std::invalid_argument("bound line without '<=': " + line);
            b.c = parse_rational(sides[1]);
            for (const auto& term : detail::split(sides[0], " + ")) {
                auto sp = term.rfind(' ');
                std::string var = (sp == std::string::npos ? term : term.substr(sp + 1));
                Rational coef = (sp == std::string::npos ? Rational(1) : parse_rational(term.substr(0, sp)));
                if (var == "d1") b.a1 = coef;
                else if (var == "d2") b.a2 = coef;
                else throw std::invalid_argument("unknown variable in bound: " + line);
            }
            r.bounds.push_back(b);
        } else if (line.rfind("vertex ", 0) == 0) {
            auto tuple = line.substr(7);
            if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')') throw std::invalid_argument("bad vertex: " + line);
            auto parts = detail::split(tuple.substr(1, tuple.size() - 2), ", ");
            if (parts.size() != 2) throw std::invalid_argument("bad vertex: " + line);
            r.vertices.push_back(DofPoint{parse_rational(parts[0]), parse_rational(parts[1])});
        }
    }
    if (!header) {
        throw std::invalid_argument("listing has no region header");
    }
    return r;
}

inline std::string export_file_name(const AntennaConfig& cfg, RegionModel model) {
    return std::to_string(cfg.m1) + "-" + std::to_string(cfg.m2) + "-" + std::to_string(cfg.n1) + "-" + std::to_string(cfg.n2) + "_" + to_string(model) + ".json";
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ExportError("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw ExportError("failed writing " + path.string());
    }
}

inline std::string document_text(const ExportDocument& doc) {
    return to_json(doc).dump(2) + "\n";
}

// One document per (config, model) plus index.csv; returns the number of index rows.
inline std::size_t export_sweep(int max_antennas, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw ExportError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
    std::ostringstream index;
    index << "config,model,case,vertex-count,relation-string\n";
    std::size_t rows = 0;
    for (const auto& cfg : canonical_sweep(max_antennas)) {
        auto rel = summarize_relations(cfg);
        std::string table_case = rel.table_case;
        if (rel.hybrid1_subcase) {
            table_case += " / hybrid1 subcase " + std::string(to_string(*rel.hybrid1_subcase));
        }
        for (auto model : all_region_models) {
            ExportDocument doc{region(cfg, model), rel, std::nullopt};
            write_text(dir / export_file_name(cfg, model), document_text(doc));
            index << "\"" << cfg.m1 << "," << cfg.m2 << "," << cfg.n1 << "," << cfg.n2 << "\"," << to_string(model) << ",\"" << table_case
                  << "\"," << doc.region.vertices.size() << ",\"" << to_string(rel.relations) << "\"\n";
            ++rows;
        }
    }
    write_text(dir / "index.csv", index.str());
    return rows;
}

}

#endif
