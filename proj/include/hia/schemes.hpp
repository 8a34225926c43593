#ifndef HIA_SCHEMES_HPP
#define HIA_SCHEMES_HPP

#include "regions.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace hia {

struct NotApplicable : Error {
    using Error::Error;
};

struct NoSecondCorner : Error {
    using Error::Error;
};

struct ScheduleInfeasible : Error {
    using Error::Error;
};

// A precoder tried to read channel knowledge its transmitter does not have yet.
struct CsitViolation : Error {
    using Error::Error;
};

enum class SchemeCorner { Primary, Secondary };

inline const char* to_string(SchemeCorner c) {
    return c == SchemeCorner::Primary ? "primary" : "secondary";
}

inline SchemeCorner parse_corner(std::string_view s) {
    if (s == "primary") return SchemeCorner::Primary;
    if (s == "secondary") return SchemeCorner::Secondary;
    throw UnknownName("unknown corner '" + std::string(s) + "'");
}

namespace detail {

inline void require_hybrid(RegionModel model) {
    if (model != RegionModel::Hybrid1 && model != RegionModel::Hybrid2) {
        throw std::invalid_argument(std::string("the HIA scheme is defined for hybrid1/hybrid2, not ") + to_string(model));
    }
}

// n split into k parts, earlier parts taking the remainder.
inline std::vector<int> spread(int n, int k) {
    std::vector<int> out(k, 0);
    for (int i = 0; i < k; ++i) {
        out[i] = n / k + (i < n % k ? 1 : 0);
    }
    return out;
}

}

inline Subcase hia_case(const AntennaConfig& cfg, RegionModel model) {
    detail::require_hybrid(model);
    if (!cfg.canonical()) {
        throw std::invalid_argument("hia_case expects a canonical config, got " + to_string(cfg));
    }
    CaseRow row = table_row(cfg);
    if (row != CaseRow::A_I_3b) {
        throw NotApplicable("config " + to_string(cfg) + " is " + to_string(row) + "; the hybrid scheme runs only for A.I.3b configs");
    }
    return frame_subcase(scheme_frame(cfg, model));
}

// All counts refer to the scheme frame: T1 is the transmitter with
// instantaneous CSIT and frame.m2 is the number of T2 antennas in use.
struct SchemeParameters {
    RegionModel model = RegionModel::Hybrid1;
    Subcase subcase = Subcase::I;
    SchemeCorner corner = SchemeCorner::Primary;
    AntennaConfig frame;
    int d1_star = 0, d2_star = 0;
    int T = 0, t1 = 0, t2 = 0, x = 0;
    std::vector<int> delta;

    int delta_sum() const {
        int s = 0;
        for (int d : delta) s += d;
        return s;
    }

    DofPoint frame_dof() const {
        return DofPoint{Rational(d1_star, T), Rational(d2_star, T)};
    }

    // In the labeling of the config the parameters were requested for.
    DofPoint dof() const {
        DofPoint p = frame_dof();
        if (model == RegionModel::Hybrid2) std::swap(p.d1, p.d2);
        return p;
    }
};

// The tabulated parameter formulas evaluated on a frame config as given,
// without reduction or applicability checks.
inline SchemeParameters formula_parameters(const AntennaConfig& f, Subcase subcase, SchemeCorner corner) {
    SchemeParameters p;
    p.subcase = subcase;
    p.corner = corner;
    p.frame = f;
    if (subcase != Subcase::III || corner == SchemeCorner::Secondary) {
        bool second = (subcase == Subcase::III);
        p.d1_star = (second ? (f.m1 - f.n2) * f.m2 : f.n1 * (f.m2 - f.n2));
        p.d2_star = f.m2 * f.n2;
        p.T = f.m2;
        p.t1 = f.n2;
        p.t2 = f.m2 - f.n2;
        p.x = (subcase == Subcase::I ? f.m2 - f.n2 : f.m1 - f.n2);
        p.delta.assign(p.t2, 0);
    } else {
        p.d1_star = f.n1 * (f.m2 - f.m1);
        p.d2_star = f.m2 * (f.m1 - f.n1);
        p.T = f.m2 - f.n1;
        p.t1 = f.m1 - f.n1;
        p.t2 = f.m2 - f.m1;
        p.x = f.m1 - f.n2;
        // All the empty dimensions at R2 after the ledger is delivered.
        int sum = f.n2 * p.t2 - (f.m2 - f.n2) * p.t1;
        p.delta = (p.t2 > 0 ? detail::spread(std::max(sum, 0), p.t2) : std::vector<int>{});
    }
    return p;
}

inline SchemeParameters hia_parameters(const AntennaConfig& cfg, RegionModel model, SchemeCorner corner) {
    Subcase sub = hia_case(cfg, model);
    if (corner == SchemeCorner::Secondary && sub != Subcase::III) {
        throw NoSecondCorner(std::string("subcase ") + to_string(sub) + " has a single non-trivial corner");
    }
    SchemeParameters p = formula_parameters(scheme_frame(cfg, model), sub, corner);
    p.model = model;
    return p;
}

enum class ConstraintStatus { Slack, Tight, Violated };

inline const char* to_string(ConstraintStatus s) {
    switch (s) {
        case ConstraintStatus::Slack: return "slack";
        case ConstraintStatus::Tight: return "tight";
        default: return "violated";
    }
}

struct ConstraintCheck {
    long lhs = 0, rhs = 0;
    ConstraintStatus status = ConstraintStatus::Slack;
};

inline ConstraintCheck check_le(long lhs, long rhs) {
    ConstraintStatus s = (lhs < rhs ? ConstraintStatus::Slack : (lhs == rhs ? ConstraintStatus::Tight : ConstraintStatus::Violated));
    return ConstraintCheck{lhs, rhs, s};
}

struct FeasibilityReport {
    ConstraintCheck t1_null_space;   // d1* - x t1 <= (M1-N2) t2 + sum(delta)
    ConstraintCheck r1_dimensions;   // d1* <= N1 t2
    ConstraintCheck r2_dimensions;   // (M2-N2) t1 <= N2 t2 - sum(delta)

    bool ok() const {
        return t1_null_space.status != ConstraintStatus::Violated
            && r1_dimensions.status != ConstraintStatus::Violated
            && r2_dimensions.status != ConstraintStatus::Violated;
    }
};

inline FeasibilityReport check_feasibility(const SchemeParameters& p) {
    const auto& f = p.frame;
    long sd = p.delta_sum();
    FeasibilityReport r;
    r.t1_null_space = check_le(p.d1_star - static_cast<long>(p.x) * p.t1, static_cast<long>(f.m1 - f.n2) * p.t2 + sd);
    r.r1_dimensions = check_le(p.d1_star, static_cast<long>(f.n1) * p.t2);
    r.r2_dimensions = check_le(static_cast<long>(f.m2 - f.n2) * p.t1, static_cast<long>(f.n2) * p.t2 - sd);
    return r;
}

// Raw interference observed at R1 antenna `antenna` in source slot `slot` (0-based).
struct LedgerId {
    int slot = 0;
    int antenna = 0;
    auto operator<=>(const LedgerId&) const = default;
};

enum class Beam { NullSpace, RowSpace };

struct T1Stream {
    int symbol = 0;
    Beam beam = Beam::NullSpace;
};

struct T2Item {
    bool fresh = true;
    int symbol = -1;
    LedgerId ledger;

    static T2Item data(int s) {
        return T2Item{true, s, {}};
    }

    static T2Item interference(LedgerId id) {
        return T2Item{false, -1, id};
    }
};

// Antennas: item k on antenna k. SplitOnH12: fresh items in null(H12(t)),
// ledger items in its complement.
enum class T2Precoding { Antennas, SplitOnH12 };

struct SlotPlan {
    bool source = false;     // phase-1 slot whose R1 interference feeds the ledger
    CsitModel csit;
    std::vector<T1Stream> t1;
    std::vector<T2Item> t2;
    T2Precoding t2_precoding = T2Precoding::Antennas;

    int delta() const {
        int d = 0;
        for (const auto& s : t1) d += (s.beam == Beam::RowSpace);
        return d;
    }

    int ledger_count() const {
        int n = 0;
        for (const auto& it : t2) n += !it.fresh;
        return n;
    }
};

struct TransmissionPlan {
    AntennaConfig cfg;           // caller labeling, full antenna counts
    bool relabeled = false;      // slots are expressed with users exchanged
    int t2_active = 0;           // frame T2 antennas carrying phase-1 data
    int d1_star = 0, d2_star = 0;
    std::vector<SlotPlan> slots;
    std::vector<LedgerId> s12, s2;

    AntennaConfig frame() const {
        return relabeled ? relabel_users(cfg) : cfg;
    }

    int T() const {
        return static_cast<int>(slots.size());
    }

    DofPoint dof() const {
        DofPoint p{Rational(d1_star, T()), Rational(d2_star, T())};
        if (relabeled) std::swap(p.d1, p.d2);
        return p;
    }

    bool in_s12(const LedgerId& id) const {
        return std::find(s12.begin(), s12.end(), id) != s12.end();
    }
};

struct PlanCaps {
    bool payload = true;         // T2 items <= N2 - delta
    bool r1_ledger = true;       // ledger items <= N1
    bool r1_joint = true;        // S12 items + T1 streams <= N1
};

inline PlanCaps check_caps(const TransmissionPlan& plan) {
    PlanCaps c;
    auto f = plan.frame();
    for (const auto& s : plan.slots) {
        if (s.source) continue;
        int s12 = 0;
        for (const auto& it : s.t2) {
            if (!it.fresh && plan.in_s12(it.ledger)) ++s12;
        }
        c.payload = c.payload && static_cast<int>(s.t2.size()) <= f.n2 - s.delta();
        c.r1_ledger = c.r1_ledger && s.ledger_count() <= f.n1;
        c.r1_joint = c.r1_joint && s12 + static_cast<int>(s.t1.size()) <= f.n1;
    }
    return c;
}

inline TransmissionPlan build_plan(const AntennaConfig& cfg, const SchemeParameters& p, const CsitModel& model) {
    const auto& f = p.frame;
    if (!check_feasibility(p).ok()) {
        throw ScheduleInfeasible("parameters violate the dimension constraints");
    }
    if (p.t1 < 1 || p.d2_star != f.m2 * p.t1) {
        throw ScheduleInfeasible("T2 data does not fill an integer number of phase-1 slots");
    }
    if (f.m2 - f.n2 > f.n1) {
        throw ScheduleInfeasible("R1 observes " + std::to_string(f.n1) + " interference dimensions per slot but the ledger needs "
            + std::to_string(f.m2 - f.n2));
    }
    if (static_cast<int>(p.delta.size()) != p.t2) {
        throw ScheduleInfeasible("delta vector length differs from t2");
    }

    TransmissionPlan plan;
    plan.cfg = cfg;
    plan.relabeled = (p.model == RegionModel::Hybrid2);
    plan.t2_active = f.m2;
    plan.d1_star = p.d1_star;
    plan.d2_star = p.d2_star;
    CsitModel frame_model = plan.relabeled ? relabel_users(model) : model;

    int u = 0, v = 0, remaining = p.d1_star;
    std::vector<int> xs;
    for (int s = 0; s < p.t1; ++s) {
        SlotPlan slot;
        slot.source = true;
        slot.csit = frame_model;
        int k = std::min(p.x, remaining);
        xs.push_back(k);
        remaining -= k;
        for (int i = 0; i < k; ++i) slot.t1.push_back(T1Stream{u++, Beam::NullSpace});
        for (int i = 0; i < f.m2; ++i) slot.t2.push_back(T2Item::data(v++));
        plan.slots.push_back(std::move(slot));
    }

    // Antenna-major so consecutive phase-2 slots pair items from different source slots.
    for (int i = 0; i < f.m2 - f.n2; ++i) {
        for (int s = 0; s < p.t1; ++s) {
            (i < xs[s] ? plan.s12 : plan.s2).push_back(LedgerId{s, i});
        }
    }

    int null_total = remaining - p.delta_sum();
    if (null_total < 0) {
        throw ScheduleInfeasible("more out-of-null-space streams than T1 data left");
    }
    auto nulls = (p.t2 > 0 ? detail::spread(null_total, p.t2) : std::vector<int>{});
    std::size_t next12 = 0, next2 = 0;
    for (int t = 0; t < p.t2; ++t) {
        SlotPlan slot;
        slot.csit = frame_model;
        int d = p.delta[t];
        if (nulls[t] > f.m1 - f.n2 || d > f.n2 || nulls[t] + d > f.m1) {
            throw ScheduleInfeasible("slot " + std::to_string(p.t1 + t + 1) + " exceeds T1's beamforming dimensions");
        }
        for (int i = 0; i < nulls[t]; ++i) slot.t1.push_back(T1Stream{u++, Beam::NullSpace});
        for (int i = 0; i < d; ++i) slot.t1.push_back(T1Stream{u++, Beam::RowSpace});
        int k1 = nulls[t] + d;
        int cap = f.n2 - d;
        while (next12 < plan.s12.size() && static_cast<int>(slot.t2.size()) < std::min(cap, f.n1 - k1)) {
            slot.t2.push_back(T2Item::interference(plan.s12[next12++]));
        }
        while (next2 < plan.s2.size() && static_cast<int>(slot.t2.size()) < cap) {
            slot.t2.push_back(T2Item::interference(plan.s2[next2++]));
        }
        plan.slots.push_back(std::move(slot));
    }
    if (next12 != plan.s12.size() || next2 != plan.s2.size() || u != p.d1_star) {
        throw ScheduleInfeasible("ledger left " + std::to_string(plan.s12.size() - next12) + " S12 and "
            + std::to_string(plan.s2.size() - next2) + " S2 elements unscheduled");
    }
    return plan;
}

// Three hybrid-1 blocks of five slots and one hybrid-2 slot over (4,5,3,2).
inline TransmissionPlan alternating_plan_4532() {
    TransmissionPlan plan;
    plan.cfg = AntennaConfig{4, 5, 3, 2, false};
    plan.t2_active = 5;
    CsitModel h1 = named_model("hybrid1");
    int u = 0, v = 0;
    for (int b = 0; b < 3; ++b) {
        int base = 5 * b;
        for (int s = 0; s < 2; ++s) {
            SlotPlan slot;
            slot.source = true;
            slot.csit = h1;
            for (int i = 0; i < 2; ++i) slot.t1.push_back(T1Stream{u++, Beam::NullSpace});
            for (int i = 0; i < 5; ++i) slot.t2.push_back(T2Item::data(v++));
            plan.slots.push_back(std::move(slot));
        }
        for (int i = 0; i < 2; ++i) {
            plan.s12.push_back(LedgerId{base, i});
            plan.s12.push_back(LedgerId{base + 1, i});
        }
        plan.s2.push_back(LedgerId{base, 2});
        plan.s2.push_back(LedgerId{base + 1, 2});
        std::vector<std::vector<LedgerId>> payloads{
            {{base, 0}, {base, 2}},
            {{base + 1, 0}, {base + 1, 2}},
            {{base, 1}, {base + 1, 1}},
        };
        for (const auto& pay : payloads) {
            SlotPlan slot;
            slot.csit = h1;
            for (int i = 0; i < 2; ++i) slot.t1.push_back(T1Stream{u++, Beam::NullSpace});
            for (const auto& id : pay) slot.t2.push_back(T2Item::interference(id));
            plan.slots.push_back(std::move(slot));
        }
    }
    // T1 is silent; R2 already holds the three ledger items and keeps the two
    // fresh symbols, R1 sees only the ledger items.
    SlotPlan last;
    last.csit = named_model("hybrid2");
    last.t2_precoding = T2Precoding::SplitOnH12;
    last.t2.push_back(T2Item::data(v++));
    last.t2.push_back(T2Item::data(v++));
    for (int b = 0; b < 3; ++b) last.t2.push_back(T2Item::interference(LedgerId{5 * b, 1}));
    plan.slots.push_back(std::move(last));
    plan.d1_star = u;
    plan.d2_star = v;
    return plan;
}

// Channel access for one transmitter at one slot, restricted to what its CSIT allows.
class CsitView {
public:
    CsitView(const ChannelRealization& ch, const std::vector<SlotPlan>& slots, Transmitter tx, int now) :
        my_ch(ch), my_slots(slots), my_tx(tx), my_now(now) {}

    const ComplexMatrix& read(Link l, int slot) const {
        if (slot < 0 || slot >= static_cast<int>(my_slots.size()) || slot > my_now) {
            throw CsitViolation(std::string(to_string(my_tx)) + " asked for " + to_string(l) + " of a future slot");
        }
        CsitState s = my_slots[slot].csit.state(my_tx, l);
        bool ok = (s == CsitState::Instant) || (s == CsitState::Delayed && slot < my_now);
        if (!ok) {
            throw CsitViolation(std::string(to_string(my_tx)) + " cannot know " + to_string(l) + "(" + std::to_string(slot + 1)
                + ") at slot " + std::to_string(my_now + 1));
        }
        return my_ch.slots[slot].link(l);
    }

private:
    const ChannelRealization& my_ch;
    const std::vector<SlotPlan>& my_slots;
    Transmitter my_tx;
    int my_now;
};

struct DataSymbols {
    ComplexVector u, v;
};

inline DataSymbols draw_symbols(const TransmissionPlan& plan, Rng& rng) {
    DataSymbols d{sample_gaussian_vector(plan.d1_star, rng), sample_gaussian_vector(plan.d2_star, rng)};
    if (plan.relabeled) std::swap(d.u, d.v);
    return d;
}

struct SlotSignals {
    ComplexMatrix v1, p2;    // precoders, columns in plan order
    ComplexVector s2;        // T2 payload values
    ComplexVector x1, x2, y1, y2;
    ComplexVector t1_at_r2, t2_at_r2;
};

// Everything in the plan's frame labeling.
struct Transmission {
    ChannelRealization channels;
    std::vector<SlotSignals> slots;
};

inline Transmission transmit(const TransmissionPlan& plan, const ChannelRealization& channels, const DataSymbols& symbols) {
    if (channels.cfg.m1 != plan.cfg.m1 || channels.cfg.m2 != plan.cfg.m2 || channels.cfg.n1 != plan.cfg.n1 || channels.cfg.n2 != plan.cfg.n2) {
        throw std::invalid_argument("realization config " + to_string(channels.cfg) + " does not match plan config " + to_string(plan.cfg));
    }
    if (static_cast<int>(channels.slots.size()) != plan.T()) {
        throw std::invalid_argument("realization has " + std::to_string(channels.slots.size()) + " slots, plan needs " + std::to_string(plan.T()));
    }
    Transmission tx;
    tx.channels = plan.relabeled ? relabel_users(channels) : channels;
    const ComplexVector& u = plan.relabeled ? symbols.v : symbols.u;
    const ComplexVector& v = plan.relabeled ? symbols.u : symbols.v;
    if (u.size() != plan.d1_star || v.size() != plan.d2_star) {
        throw std::invalid_argument("symbol vectors do not match the plan's data counts");
    }
    const auto f = plan.frame();
    const auto& ch = tx.channels;

    for (int t = 0; t < plan.T(); ++t) {
        const auto& slot = plan.slots[t];
        const auto& h = ch.slots[t];
        SlotSignals sig;

        sig.v1 = ComplexMatrix::Zero(f.m1, slot.t1.size());
        ComplexVector data1(slot.t1.size());
        if (!slot.t1.empty()) {
            CsitView view(ch, plan.slots, Transmitter::T1, t);
            const auto& h21 = view.read(Link::H21, t);
            ComplexMatrix nb = null_space_basis(h21);
            ComplexMatrix rb = row_space_basis(h21);
            Index ni = 0, ri = 0;
            for (std::size_t j = 0; j < slot.t1.size(); ++j) {
                const auto& s = slot.t1[j];
                const ComplexMatrix& basis = (s.beam == Beam::NullSpace ? nb : rb);
                Index& next = (s.beam == Beam::NullSpace ? ni : ri);
                if (next >= basis.cols()) {
                    throw RankDeficient("T1 has no beamforming dimension left at slot " + std::to_string(t + 1));
                }
                sig.v1.col(j) = basis.col(next++);
                data1(j) = u(s.symbol);
            }
        }

        CsitView view2(ch, plan.slots, Transmitter::T2, t);
        sig.s2 = ComplexVector(slot.t2.size());
        for (std::size_t j = 0; j < slot.t2.size(); ++j) {
            const auto& it = slot.t2[j];
            if (it.fresh) {
                sig.s2(j) = v(it.symbol);
            } else {
                // T2 regenerates what R1 overheard from its own past signal and delayed H12.
                const auto& h12 = view2.read(Link::H12, it.ledger.slot);
                sig.s2(j) = (h12 * tx.slots[it.ledger.slot].x2)(it.ledger.antenna);
            }
        }
        sig.p2 = ComplexMatrix::Zero(f.m2, slot.t2.size());
        if (slot.t2_precoding == T2Precoding::Antennas) {
            if (static_cast<Index>(slot.t2.size()) > f.m2) {
                throw ScheduleInfeasible("T2 payload exceeds its antennas");
            }
            for (std::size_t j = 0; j < slot.t2.size(); ++j) sig.p2(j, j) = 1;
        } else if (!slot.t2.empty()) {
            const auto& h12 = view2.read(Link::H12, t);
            ComplexMatrix nb = null_space_basis(h12);
            ComplexMatrix rb = row_space_basis(h12);
            Index ni = 0, ri = 0;
            for (std::size_t j = 0; j < slot.t2.size(); ++j) {
                bool fresh = slot.t2[j].fresh;
                const ComplexMatrix& basis = (fresh ? nb : rb);
                Index& next = (fresh ? ni : ri);
                if (next >= basis.cols()) {
                    throw RankDeficient("T2 has no beamforming dimension left at slot " + std::to_string(t + 1));
                }
                sig.p2.col(j) = basis.col(next++);
            }
        }

        sig.x1 = sig.v1 * data1;
        sig.x2 = sig.p2 * sig.s2;
        sig.y1 = h.h11 * sig.x1 + h.h12 * sig.x2;
        sig.t1_at_r2 = h.h21 * sig.x1;
        sig.t2_at_r2 = h.h22 * sig.x2;
        sig.y2 = sig.t1_at_r2 + sig.t2_at_r2;
        tx.slots.push_back(std::move(sig));
    }
    return tx;
}

struct DecodeOutcome {
    ComplexVector recovered_u, recovered_v;
    double max_rel_error = std::numeric_limits<double>::infinity();
    double min_conditioning = 0;
    bool rank_ok = false;
};

namespace detail {

inline double rel_error(const ComplexVector& got, const ComplexVector& want) {
    if (want.size() == 0) return 0;
    double scale = want.cwiseAbs().maxCoeff();
    double err = (got - want).cwiseAbs().maxCoeff();
    return scale > 0 ? err / scale : err;
}

struct Tracker {
    double min_cond = std::numeric_limits<double>::infinity();

    ComplexVector solve(const ComplexMatrix& A, const ComplexVector& b) {
        auto s = solve_checked(A, b);
        min_cond = std::min(min_cond, s.conditioning);
        return s.x;
    }
};

// R1: undo each source slot's receive rotation, then solve every other slot
// jointly for T1's later data and the interference hiding under the desired
// streams.
inline ComplexVector decode_r1(const TransmissionPlan& plan, const Transmission& tx, Tracker& tr) {
    const auto f = plan.frame();
    const auto& ch = tx.channels;
    ComplexVector u = ComplexVector::Zero(plan.d1_star);

    struct SourceInfo {
        ComplexMatrix U;
        ComplexVector r;
        Index offset = 0;
        Index x = 0;
    };
    std::map<int, SourceInfo> src;
    Index n = 0;
    for (int s = 0; s < plan.T(); ++s) {
        if (!plan.slots[s].source) continue;
        SourceInfo info;
        info.x = static_cast<Index>(plan.slots[s].t1.size());
        ComplexMatrix G = ch.slots[s].h11 * tx.slots[s].v1;
        info.U = receive_unitary(G, info.x);
        info.r = info.U * tx.slots[s].y1;
        info.offset = n;
        n += info.x;
        src[s] = std::move(info);
    }
    std::map<int, Index> ucol;
    for (int t = 0; t < plan.T(); ++t) {
        if (plan.slots[t].source) continue;
        for (const auto& s : plan.slots[t].t1) ucol[s.symbol] = n++;
    }

    std::vector<ComplexMatrix> blocks;
    std::vector<ComplexVector> rhs;
    for (int t = 0; t < plan.T(); ++t) {
        const auto& slot = plan.slots[t];
        if (slot.source) continue;
        const auto& h = ch.slots[t];
        const auto& sig = tx.slots[t];
        ComplexMatrix A = ComplexMatrix::Zero(f.n1, n);
        ComplexVector b = sig.y1;
        for (std::size_t j = 0; j < slot.t1.size(); ++j) {
            A.col(ucol[slot.t1[j].symbol]) += h.h11 * sig.v1.col(j);
        }
        for (std::size_t j = 0; j < slot.t2.size(); ++j) {
            const auto& it = slot.t2[j];
            if (it.fresh) {
                if (slot.t2_precoding != T2Precoding::SplitOnH12) {
                    throw std::logic_error("fresh T2 data outside phase 1 must be zero-forced at R1");
                }
                continue;
            }
            const auto& info = src.at(it.ledger.slot);
            ComplexVector col = h.h12 * sig.p2.col(j);
            ComplexMatrix Uh = info.U.adjoint();
            Index x = info.x, i = it.ledger.antenna;
            Complex known = (Uh.row(i).tail(f.n1 - x) * info.r.tail(f.n1 - x))(0, 0);
            b -= col * known;
            for (Index q = 0; q < x; ++q) A.col(info.offset + q) += col * Uh(i, q);
        }
        blocks.push_back(std::move(A));
        rhs.push_back(std::move(b));
    }

    ComplexVector sol;
    if (n > 0) {
        Index rows = 0;
        for (const auto& B : blocks) rows += B.rows();
        ComplexMatrix A(rows, n);
        ComplexVector b(rows);
        Index at = 0;
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            A.middleRows(at, blocks[k].rows()) = blocks[k];
            b.segment(at, rhs[k].size()) = rhs[k];
            at += blocks[k].rows();
        }
        sol = tr.solve(A, b);
    }
    for (const auto& [sym, col] : ucol) u(sym) = sol(col);

    for (const auto& [s, info] : src) {
        if (info.x == 0) continue;
        ComplexMatrix G = (info.U * ch.slots[s].h11 * tx.slots[s].v1).topRows(info.x);
        ComplexVector z = sol.segment(info.offset, info.x);
        ComplexVector us = tr.solve(G, info.r.head(info.x) - z);
        const auto& streams = plan.slots[s].t1;
        for (Index j = 0; j < info.x; ++j) u(streams[j].symbol) = us(j);
    }
    return u;
}

// R2: peel the later slots in time order (dropping T1's out-of-null-space
// dimensions), then combine each source slot's direct observation with the
// delivered ledger rows.
inline ComplexVector decode_r2(const TransmissionPlan& plan, const Transmission& tx, Tracker& tr) {
    const auto f = plan.frame();
    const auto& ch = tx.channels;
    ComplexVector v = ComplexVector::Zero(plan.d2_star);
    std::map<LedgerId, Complex> ledger;
    std::map<int, Complex> fresh;

    for (int t = 0; t < plan.T(); ++t) {
        const auto& slot = plan.slots[t];
        if (slot.source) continue;
        const auto& h = ch.slots[t];
        const auto& sig = tx.slots[t];
        std::vector<Index> out_cols;
        for (std::size_t j = 0; j < slot.t1.size(); ++j) {
            if (slot.t1[j].beam == Beam::RowSpace) out_cols.push_back(static_cast<Index>(j));
        }
        ComplexMatrix Pi;
        if (out_cols.empty()) {
            Pi = ComplexMatrix::Identity(f.n2, f.n2);
        } else {
            ComplexMatrix D(f.n2, out_cols.size());
            for (std::size_t k = 0; k < out_cols.size(); ++k) D.col(k) = h.h21 * sig.v1.col(out_cols[k]);
            Pi = left_null_basis(D).adjoint();
        }
        ComplexVector y = Pi * sig.y2;
        std::vector<std::size_t> unknown;
        for (std::size_t j = 0; j < slot.t2.size(); ++j) {
            const auto& it = slot.t2[j];
            ComplexVector c = Pi * h.h22 * sig.p2.col(j);
            if (!it.fresh && ledger.count(it.ledger)) {
                y -= c * ledger[it.ledger];
            } else if (it.fresh && fresh.count(it.symbol)) {
                y -= c * fresh[it.symbol];
            } else {
                unknown.push_back(j);
            }
        }
        if (unknown.empty()) continue;
        ComplexMatrix A(Pi.rows(), unknown.size());
        for (std::size_t k = 0; k < unknown.size(); ++k) A.col(k) = Pi * h.h22 * sig.p2.col(unknown[k]);
        ComplexVector sol = tr.solve(A, y);
        for (std::size_t k = 0; k < unknown.size(); ++k) {
            const auto& it = slot.t2[unknown[k]];
            if (it.fresh) fresh[it.symbol] = sol(k);
            else ledger[it.ledger] = sol(k);
        }
    }

    for (int s = 0; s < plan.T(); ++s) {
        const auto& slot = plan.slots[s];
        if (!slot.source) continue;
        const auto& h = ch.slots[s];
        const auto& sig = tx.slots[s];
        ComplexMatrix direct = h.h22 * sig.p2;
        ComplexMatrix cross = h.h12 * sig.p2;
        std::vector<Index> rows;
        for (Index i = 0; i < f.n1; ++i) {
            if (ledger.count(LedgerId{s, static_cast<int>(i)})) rows.push_back(i);
        }
        ComplexMatrix A(direct.rows() + rows.size(), direct.cols());
        ComplexVector b(A.rows());
        A.topRows(direct.rows()) = direct;
        b.head(direct.rows()) = sig.y2;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            A.row(direct.rows() + k) = cross.row(rows[k]);
            b(direct.rows() + k) = ledger[LedgerId{s, static_cast<int>(rows[k])}];
        }
        ComplexVector vs = tr.solve(A, b);
        for (std::size_t j = 0; j < slot.t2.size(); ++j) v(slot.t2[j].symbol) = vs(j);
    }
    for (const auto& [sym, val] : fresh) v(sym) = val;
    return v;
}

}

inline DecodeOutcome decode(const TransmissionPlan& plan, const Transmission& tx) {
    DecodeOutcome out;
    detail::Tracker tr;
    try {
        ComplexVector u = detail::decode_r1(plan, tx, tr);
        ComplexVector v = detail::decode_r2(plan, tx, tr);
        if (plan.relabeled) std::swap(u, v);
        out.recovered_u = std::move(u);
        out.recovered_v = std::move(v);
        out.rank_ok = true;
        out.min_conditioning = tr.min_cond;
    } catch (const RankDeficient&) {
        out.rank_ok = false;
    }
    return out;
}

inline DecodeOutcome execute_and_decode(const TransmissionPlan& plan, const ChannelRealization& channels, const DataSymbols& symbols) {
    DecodeOutcome out;
    Transmission tx;
    try {
        tx = transmit(plan, channels, symbols);
    } catch (const RankDeficient&) {
        return out;
    } catch (const EmptyNullSpace&) {
        return out;
    }
    out = decode(plan, tx);
    if (out.rank_ok) {
        out.max_rel_error = std::max(detail::rel_error(out.recovered_u, symbols.u), detail::rel_error(out.recovered_v, symbols.v));
    }
    return out;
}

}

#endif
