#ifndef HIADOF_COMMANDS_HPP
#define HIADOF_COMMANDS_HPP

#include "hia/export.hpp"

#include <iomanip>
#include <ostream>

namespace hia::cli {

enum ExitCode { ok = 0, failed = 1, not_applicable = 2, usage = 3 };

inline AntennaConfig parse_config(const std::string& text) {
    auto parts = detail::split(text, ",");
    if (parts.size() != 4) {
        throw std::invalid_argument("--config needs four comma-separated antenna counts, got '" + text + "'");
    }
    int v[4];
    for (int i = 0; i < 4; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stoi(parts[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != parts[i].size()) {
            throw std::invalid_argument("antenna count '" + parts[i] + "' is not an integer");
        }
    }
    return AntennaConfig{v[0], v[1], v[2], v[3], false};
}

// Canonical config and the model name as seen after relabeling.
inline std::pair<AntennaConfig, RegionModel> canonical_view(const AntennaConfig& input, RegionModel model, std::ostream& out) {
    AntennaConfig cfg = canonicalize(input.m1, input.m2, input.n1, input.n2);
    if (cfg.swapped) {
        if (model == RegionModel::Hybrid1) model = RegionModel::Hybrid2;
        else if (model == RegionModel::Hybrid2) model = RegionModel::Hybrid1;
        out << "note: users relabelled so that N1 >= N2; working on " << to_string(cfg) << " with model " << to_string(model) << "\n";
    }
    return {cfg, model};
}

inline int cmd_region(const AntennaConfig& input, RegionModel model, const std::string& json_path, std::ostream& out) {
    auto [cfg, m] = canonical_view(input, model, out);
    auto r = region(cfg, m);
    out << region_listing(r);
    if (!json_path.empty()) {
        ExportDocument doc{r, summarize_relations(cfg), std::nullopt};
        write_text(json_path, document_text(doc));
        out << "wrote " << json_path << "\n";
    }
    return ok;
}

inline std::string classify_line(const AntennaConfig& cfg) {
    auto rc = classify(cfg);
    std::string head = to_string(rc.row);
    if (rc.hybrid1) {
        head += std::string(" / hybrid1 subcase ") + to_string(*rc.hybrid1);
    }
    return head + "; " + to_string(relations(cfg));
}

inline int cmd_classify(const AntennaConfig& input, std::ostream& out) {
    auto cfg = canonical_view(input, RegionModel::Delayed, out).first;
    out << classify_line(cfg) << "\n";
    auto rc = classify(cfg);
    if (rc.hybrid2) {
        out << "hybrid2 subcase " << to_string(*rc.hybrid2) << "\n";
    }
    return ok;
}

inline ModelClass parse_class(const std::string& s) {
    for (auto c : {ModelClass::InstantClass, ModelClass::Hybrid1Class, ModelClass::Hybrid2Class, ModelClass::DelayedClass, ModelClass::Unknown}) {
        if (s == to_string(c)) return c;
    }
    throw UnknownName("unknown model class '" + s + "' (expected instantaneous, hybrid1, hybrid2, delayed or unknown)");
}

struct OctupleCensus {
    std::map<ModelClass, int> counts;
    int overlaps = 0;   // octuples claimed by more than one class predicate
};

inline OctupleCensus census() {
    OctupleCensus c;
    for (int code = 0; code < CsitModel::count; ++code) {
        auto m = CsitModel::from_code(code);
        int hits = 0;
        for (auto k : known_classes) hits += in_class(m, k);
        c.overlaps += (hits > 1);
        ++c.counts[classify_octuple(m)];
    }
    return c;
}

inline int cmd_models(const std::string& filter, bool check_disjoint, std::ostream& out, std::size_t sample = 10) {
    auto c = census();
    out << "octuples " << CsitModel::count << "\n";
    for (auto k : {ModelClass::InstantClass, ModelClass::Hybrid1Class, ModelClass::Hybrid2Class, ModelClass::DelayedClass, ModelClass::Unknown}) {
        out << to_string(k) << " " << c.counts[k] << "\n";
    }
    if (check_disjoint) {
        out << "disjoint: " << (c.overlaps == 0 ? "true" : "false") << "\n";
    }
    if (!filter.empty()) {
        auto want = parse_class(filter);
        std::size_t shown = 0;
        for (int code = 0; code < CsitModel::count && shown < sample; ++code) {
            auto m = CsitModel::from_code(code);
            if (classify_octuple(m) == want) {
                out << "  " << to_string(m) << "\n";
                ++shown;
            }
        }
        out << "  (" << shown << " of " << c.counts[want] << " " << filter << " octuples shown)\n";
    }
    return (check_disjoint && c.overlaps != 0) ? failed : ok;
}

struct SimulateOptions {
    AntennaConfig config{4, 5, 3, 2, false};
    RegionModel model = RegionModel::Hybrid1;
    SchemeCorner corner = SchemeCorner::Primary;
    int trials = 100;
    std::uint64_t seed = 42;
    bool alternating = false;
    std::string json_path;
};

inline std::string violation_text(const DofRegion& r, const DofPoint& p) {
    std::string s;
    for (const auto& b : r.bounds) {
        if (!b.holds(p)) {
            s += std::string(s.empty() ? "" : ", ") + to_string(b.label) + " " + to_string(b.lhs(p)) + " > " + to_string(b.c);
        }
    }
    return s;
}

inline void print_report(const SimReport& rep, std::ostream& out) {
    out << "trials " << rep.trials << ", successes " << rep.successes << ", failures " << rep.failures
        << ", resampled " << rep.resampled_degenerate << ", max error " << std::setprecision(3) << rep.max_rel_error
        << ", min conditioning " << rep.min_conditioning << "\n";
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.trials < 1) {
        err << "error: --trials must be at least 1\n";
        return usage;
    }
    if (opt.alternating) {
        AntennaConfig want{4, 5, 3, 2, false};
        if (!(opt.config == want)) {
            err << "error: the alternating plan is defined only for --config 4,5,3,2\n";
            return not_applicable;
        }
        out << "config (4,5,3,2) alternating plan, 15 hybrid1 slots + 1 hybrid2 slot, seed " << opt.seed << "\n";
        auto rep = monte_carlo_alternating(opt.trials, opt.seed);
        print_report(rep, out);
        auto v = cross_check_alternating(rep, want);
        auto h1 = region(want, RegionModel::Hybrid1), h2 = region(want, RegionModel::Hybrid2);
        out << "achieved " << to_string(rep.achieved_dof) << ", " << rep.successes << "/" << rep.trials << ", "
            << (v.outside_both() ? "outside hybrid1 and hybrid2 regions" : "NOT outside both hybrid regions") << "\n";
        out << "hybrid1 violated: " << violation_text(h1, rep.achieved_dof) << "; hybrid2 violated: " << violation_text(h2, rep.achieved_dof) << "\n";
        if (!opt.json_path.empty()) {
            ExportDocument doc{h1, summarize_relations(want), SimSummary{rep, "alternating", opt.seed, "outside"}};
            write_text(opt.json_path, document_text(doc));
        }
        return (rep.successes == rep.trials && v.outside_both()) ? ok : failed;
    }

    if (opt.model != RegionModel::Hybrid1 && opt.model != RegionModel::Hybrid2) {
        err << "error: --model must be hybrid1 or hybrid2 for the scheme simulation\n";
        return usage;
    }
    auto [cfg, model] = canonical_view(opt.config, opt.model, out);
    SchemeParameters p;
    try {
        p = hia_parameters(cfg, model, opt.corner);
    } catch (const NotApplicable& e) {
        err << "not applicable: " << e.what() << "\n";
        return not_applicable;
    } catch (const NoSecondCorner& e) {
        err << "not applicable: " << e.what() << "\n";
        return not_applicable;
    }
    auto fr = check_feasibility(p);
    out << "config " << to_string(cfg) << " model " << to_string(model) << " corner " << to_string(opt.corner)
        << " subcase " << to_string(p.subcase) << " seed " << opt.seed << "\n";
    out << "parameters: d1*=" << p.d1_star << " d2*=" << p.d2_star << " T=" << p.T << " t1=" << p.t1 << " t2=" << p.t2 << " x=" << p.x << " delta=[";
    for (std::size_t i = 0; i < p.delta.size(); ++i) out << (i ? "," : "") << p.delta[i];
    out << "]\n";
    auto show = [&](const char* name, const ConstraintCheck& c) {
        out << name << " " << to_string(c.status) << " (" << c.lhs << " <= " << c.rhs << ")";
    };
    out << "constraints: ";
    show("T1 null space", fr.t1_null_space);
    out << ", ";
    show("R1 dimensions", fr.r1_dimensions);
    out << ", ";
    show("R2 dimensions", fr.r2_dimensions);
    out << "\n";

    auto rep = monte_carlo(cfg, model, opt.corner, opt.trials, opt.seed);
    print_report(rep, out);
    auto v = cross_check(rep, cfg, model);
    out << "achieved " << to_string(rep.achieved_dof) << ", " << rep.successes << "/" << rep.trials << ", "
        << (v.on_boundary() ? "on-boundary" : to_string(v.placement)) << "\n";
    out << "placement in " << to_string(model) << " region: " << to_string(v.placement) << "; tight bounds:";
    for (auto b : v.tight) out << " " << to_string(b);
    out << "\n";
    if (!opt.json_path.empty()) {
        ExportDocument doc{region(cfg, model), summarize_relations(cfg), SimSummary{rep, to_string(opt.corner), opt.seed, to_string(v.placement)}};
        write_text(opt.json_path, document_text(doc));
    }
    return (rep.successes == rep.trials && v.on_boundary()) ? ok : failed;
}

inline int cmd_export(int sweep, const std::string& dir, std::ostream& out) {
    if (sweep < 1) {
        throw std::invalid_argument("--sweep must be at least 1");
    }
    auto rows = export_sweep(sweep, dir);
    out << "wrote " << rows << " documents and index.csv to " << dir << "\n";
    return ok;
}

}

#endif
