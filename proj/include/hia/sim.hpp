#ifndef HIA_SIM_HPP
#define HIA_SIM_HPP

#include "schemes.hpp"

#include <cstdint>
#include <limits>
#include <optional>

namespace hia {

struct SimReport {
    int trials = 0;
    int successes = 0;
    int failures = 0;
    int resampled_degenerate = 0;
    double max_rel_error = 0;
    double min_conditioning = std::numeric_limits<double>::infinity();
    DofPoint achieved_dof;

    bool operator==(const SimReport&) const = default;
};

inline constexpr double recovery_tolerance = 1e-6;
inline constexpr int max_resamples = 3;

// splitmix64 step: decorrelated per-trial seeds from one master seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline SimReport run_plan(const TransmissionPlan& plan, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    SimReport rep;
    rep.trials = trials;
    rep.achieved_dof = plan.dof();
    for (int t = 0; t < trials; ++t) {
        Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
        DecodeOutcome out;
        for (int attempt = 0; attempt <= max_resamples; ++attempt) {
            auto ch = sample_realization(plan.cfg, plan.T(), rng);
            auto sym = draw_symbols(plan, rng);
            out = execute_and_decode(plan, ch, sym);
            if (out.rank_ok) break;
            ++rep.resampled_degenerate;
        }
        if (out.rank_ok && out.max_rel_error <= recovery_tolerance) {
            ++rep.successes;
        } else {
            ++rep.failures;
        }
        if (out.rank_ok) {
            rep.max_rel_error = std::max(rep.max_rel_error, out.max_rel_error);
            rep.min_conditioning = std::min(rep.min_conditioning, out.min_conditioning);
        }
    }
    return rep;
}

inline SimReport monte_carlo(const AntennaConfig& cfg, RegionModel model, SchemeCorner corner, int trials, std::uint64_t seed) {
    auto params = hia_parameters(cfg, model, corner);
    auto plan = build_plan(cfg, params, named_model(to_string(model)));
    return run_plan(plan, trials, seed);
}

inline SimReport monte_carlo_alternating(int trials, std::uint64_t seed) {
    return run_plan(alternating_plan_4532(), trials, seed);
}

enum class Placement { Vertex, Boundary, Interior, Outside };

inline const char* to_string(Placement p) {
    switch (p) {
        case Placement::Vertex: return "vertex";
        case Placement::Boundary: return "on-boundary";
        case Placement::Interior: return "interior";
        default: return "outside";
    }
}

struct Verdict {
    Placement placement = Placement::Outside;
    std::vector<BoundLabel> tight;
    std::vector<BoundLabel> violated;

    // Achievability meets the outer bound: the point sits on the region's boundary.
    bool on_boundary() const {
        return placement == Placement::Vertex || placement == Placement::Boundary;
    }
};

inline Verdict place(const DofPoint& p, const DofRegion& r) {
    Verdict v;
    v.tight = r.tight_bounds(p);
    v.violated = r.violated_bounds(p);
    if (!r.contains(p)) {
        v.placement = Placement::Outside;
    } else if (r.is_vertex(p)) {
        v.placement = Placement::Vertex;
    } else if (r.on_boundary(p)) {
        v.placement = Placement::Boundary;
    } else {
        v.placement = Placement::Interior;
    }
    return v;
}

inline Verdict cross_check(const SimReport& report, const AntennaConfig& cfg, RegionModel model) {
    return place(report.achieved_dof, region(cfg, model));
}

struct AlternatingVerdict {
    Verdict hybrid1, hybrid2;

    bool outside_both() const {
        return hybrid1.placement == Placement::Outside && hybrid2.placement == Placement::Outside;
    }
};

inline AlternatingVerdict cross_check_alternating(const SimReport& report, const AntennaConfig& cfg) {
    return AlternatingVerdict{cross_check(report, cfg, RegionModel::Hybrid1), cross_check(report, cfg, RegionModel::Hybrid2)};
}

}

#endif
