#ifndef HIA_REGIONS_HPP
#define HIA_REGIONS_HPP

#include "channel.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hia {

using Rational = boost::rational<std::int64_t>;

// Compare rationals only against rationals: with boost 1.74 under C++20,
// rational-vs-integer comparisons recurse through rewritten operators.

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p/q" or "p"; boost normalizes to lowest terms with a positive denominator.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(std::stoll(std::string(text)));
        }
        auto num = std::stoll(std::string(trim(text.substr(0, slash))));
        auto den = std::stoll(std::string(trim(text.substr(slash + 1))));
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
}

struct DofPoint {
    Rational d1, d2;
    bool operator==(const DofPoint&) const = default;
};

inline std::string to_string(const DofPoint& p) {
    return "(" + to_string(p.d1) + ", " + to_string(p.d2) + ")";
}

enum class BoundLabel { L01, L02, L1, L2, L3, L4, L5 };

inline const char* to_string(BoundLabel b) {
    switch (b) {
        case BoundLabel::L01: return "L01";
        case BoundLabel::L02: return "L02";
        case BoundLabel::L1: return "L1";
        case BoundLabel::L2: return "L2";
        case BoundLabel::L3: return "L3";
        case BoundLabel::L4: return "L4";
        default: return "L5";
    }
}

inline BoundLabel parse_bound_label(std::string_view s) {
    for (auto b : {BoundLabel::L01, BoundLabel::L02, BoundLabel::L1, BoundLabel::L2, BoundLabel::L3, BoundLabel::L4, BoundLabel::L5}) {
        if (s == to_string(b)) {
            return b;
        }
    }
    throw std::invalid_argument("unknown bound label '" + std::string(s) + "'");
}

// a1*d1 + a2*d2 <= c
struct LinearBound {
    Rational a1, a2, c;
    BoundLabel label = BoundLabel::L01;

    Rational lhs(const DofPoint& p) const {
        return a1 * p.d1 + a2 * p.d2;
    }

    bool holds(const DofPoint& p) const {
        return lhs(p) <= c;
    }

    bool tight(const DofPoint& p) const {
        return lhs(p) == c;
    }

    bool operator==(const LinearBound&) const = default;
};

inline std::string to_string(const LinearBound& b) {
    auto term = [](const Rational& a, const char* var) -> std::string {
        if (a == Rational(0)) return "";
        if (a == Rational(1)) return var;
        return to_string(a) + " " + var;
    };
    std::string lhs = term(b.a1, "d1");
    std::string rhs = term(b.a2, "d2");
    std::string both = lhs.empty() ? rhs : (rhs.empty() ? lhs : lhs + " + " + rhs);
    return std::string(to_string(b.label)) + ": " + both + " <= " + to_string(b.c);
}

enum class RegionModel { Delayed, Hybrid1, Hybrid2, Instantaneous };

inline constexpr std::array<RegionModel, 4> all_region_models{
    RegionModel::Delayed, RegionModel::Hybrid1, RegionModel::Hybrid2, RegionModel::Instantaneous
};

inline const char* to_string(RegionModel m) {
    switch (m) {
        case RegionModel::Delayed: return "delayed";
        case RegionModel::Hybrid1: return "hybrid1";
        case RegionModel::Hybrid2: return "hybrid2";
        default: return "instantaneous";
    }
}

inline RegionModel parse_region_model(std::string_view s) {
    for (auto m : all_region_models) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw UnknownName("unknown region model '" + std::string(s) + "'");
}

// Definition 1 chain for Condition i, with j the other user.
inline bool condition_holds(const AntennaConfig& cfg, int i) {
    if (i != 1 && i != 2) {
        throw std::invalid_argument("condition index must be 1 or 2");
    }
    const std::int64_t Mi = (i == 1 ? cfg.m1 : cfg.m2), Mj = (i == 1 ? cfg.m2 : cfg.m1);
    const std::int64_t Ni = (i == 1 ? cfg.n1 : cfg.n2), Nj = (i == 1 ? cfg.n2 : cfg.n1);
    const std::int64_t mid = cfg.n1 + cfg.n2 - Mj;
    if (!(Mi > mid && mid > Ni && Ni > Nj && Nj > Mj)) {
        return false;
    }
    return Rational(Mj) > Rational(Nj * (Nj - Mj), Ni - Mj);
}

namespace detail {

inline LinearBound make_l1(const AntennaConfig& c) {
    std::int64_t m = std::min(c.n2, c.m1);
    return LinearBound{Rational(1, std::min(c.n1 + c.n2, c.m1)), Rational(1, m), Rational(std::min(c.n2, c.m1 + c.m2), m), BoundLabel::L1};
}

inline LinearBound make_l2(const AntennaConfig& c) {
    std::int64_t m = std::min(c.n1, c.m2);
    return LinearBound{Rational(1, m), Rational(1, std::min(c.n1 + c.n2, c.m2)), Rational(std::min(c.n1, c.m1 + c.m2), m), BoundLabel::L2};
}

inline LinearBound make_l3(const AntennaConfig& c) {
    int cap = std::min({c.m1 + c.m2, c.n1 + c.n2, std::max(c.m1, c.n2), std::max(c.m2, c.n1)});
    return LinearBound{Rational(1), Rational(1), Rational(cap), BoundLabel::L3};
}

inline LinearBound make_l4(const AntennaConfig& c) {
    return LinearBound{Rational(1), Rational(c.n1 + 2 * c.n2 - c.m2, c.n2), Rational(c.n1 + c.n2), BoundLabel::L4};
}

inline LinearBound make_l5(const AntennaConfig& c) {
    return LinearBound{Rational(c.n2 + 2 * c.n1 - c.m1, c.n1), Rational(1), Rational(c.n1 + c.n2), BoundLabel::L5};
}

}

inline std::vector<LinearBound> bounds_for(const AntennaConfig& cfg, RegionModel model) {
    std::vector<LinearBound> out{
        LinearBound{Rational(1), Rational(0), Rational(std::min(cfg.m1, cfg.n1)), BoundLabel::L01},
        LinearBound{Rational(0), Rational(1), Rational(std::min(cfg.m2, cfg.n2)), BoundLabel::L02},
    };
    bool use_l1 = (model == RegionModel::Hybrid2 || model == RegionModel::Delayed);
    bool use_l2 = (model == RegionModel::Hybrid1 || model == RegionModel::Delayed);
    if (use_l1) out.push_back(detail::make_l1(cfg));
    if (use_l2) out.push_back(detail::make_l2(cfg));
    out.push_back(detail::make_l3(cfg));
    if (use_l1 && condition_holds(cfg, 1)) out.push_back(detail::make_l4(cfg));
    if (use_l2 && condition_holds(cfg, 2)) out.push_back(detail::make_l5(cfg));
    return out;
}

// Bounds are the model's L-set; d1 >= 0 and d2 >= 0 are implicit.
struct DofRegion {
    AntennaConfig cfg;
    RegionModel model = RegionModel::Delayed;
    std::vector<LinearBound> bounds;
    std::vector<DofPoint> vertices;

    bool contains(const DofPoint& p) const {
        if (p.d1 < Rational(0) || p.d2 < Rational(0)) {
            return false;
        }
        return std::all_of(bounds.begin(), bounds.end(), [&](const LinearBound& b) { return b.holds(p); });
    }

    std::vector<BoundLabel> tight_bounds(const DofPoint& p) const {
        std::vector<BoundLabel> out;
        for (const auto& b : bounds) {
            if (b.tight(p)) out.push_back(b.label);
        }
        return out;
    }

    std::vector<BoundLabel> violated_bounds(const DofPoint& p) const {
        std::vector<BoundLabel> out;
        for (const auto& b : bounds) {
            if (!b.holds(p)) out.push_back(b.label);
        }
        return out;
    }

    bool on_boundary(const DofPoint& p) const {
        return contains(p) && (p.d1 == Rational(0) || p.d2 == Rational(0) || !tight_bounds(p).empty());
    }

    bool is_vertex(const DofPoint& p) const {
        return std::find(vertices.begin(), vertices.end(), p) != vertices.end();
    }
};

namespace detail {

inline std::vector<DofPoint> enumerate_vertices(const std::vector<LinearBound>& bounds) {
    std::vector<LinearBound> lines = bounds;
    lines.push_back(LinearBound{Rational(-1), Rational(0), Rational(0), BoundLabel::L01});
    lines.push_back(LinearBound{Rational(0), Rational(-1), Rational(0), BoundLabel::L02});

    auto feasible = [&](const DofPoint& p) {
        return std::all_of(lines.begin(), lines.end(), [&](const LinearBound& b) { return b.holds(p); });
    };

    std::vector<DofPoint> pts;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& a = lines[i];
            const auto& b = lines[j];
            Rational det = a.a1 * b.a2 - a.a2 * b.a1;
            if (det == Rational(0)) {
                continue;
            }
            DofPoint p{(a.c * b.a2 - a.a2 * b.c) / det, (a.a1 * b.c - a.c * b.a1) / det};
            if (feasible(p) && std::find(pts.begin(), pts.end(), p) == pts.end()) {
                pts.push_back(p);
            }
        }
    }

    // Counterclockwise around the centroid, starting from the origin.
    Rational cx(0), cy(0);
    for (const auto& p : pts) {
        cx += p.d1;
        cy += p.d2;
    }
    cx /= static_cast<std::int64_t>(pts.size());
    cy /= static_cast<std::int64_t>(pts.size());
    auto upper = [&](const DofPoint& p) {
        Rational dx = p.d1 - cx, dy = p.d2 - cy;
        return dy > Rational(0) || (dy == Rational(0) && dx > Rational(0));
    };
    std::sort(pts.begin(), pts.end(), [&](const DofPoint& p, const DofPoint& q) {
        bool up = upper(p), uq = upper(q);
        if (up != uq) {
            return up;
        }
        Rational cross = (p.d1 - cx) * (q.d2 - cy) - (p.d2 - cy) * (q.d1 - cx);
        return cross > Rational(0);
    });
    auto origin = std::find(pts.begin(), pts.end(), DofPoint{Rational(0), Rational(0)});
    std::rotate(pts.begin(), origin, pts.end());
    return pts;
}

}

inline DofRegion region(const AntennaConfig& cfg, RegionModel model) {
    DofRegion out{cfg, model, bounds_for(cfg, model), {}};
    out.vertices = detail::enumerate_vertices(out.bounds);
    return out;
}

enum class Relation { Equal, StrictSubset, StrictSuperset, Incomparable };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "=";
        case Relation::StrictSubset: return "⊂";
        case Relation::StrictSuperset: return "⊃";
        default: return "~";
    }
}

inline bool subset_of(const DofRegion& a, const DofRegion& b) {
    return std::all_of(a.vertices.begin(), a.vertices.end(), [&](const DofPoint& p) { return b.contains(p); });
}

inline Relation compare(const DofRegion& a, const DofRegion& b) {
    bool ab = subset_of(a, b);
    bool ba = subset_of(b, a);
    if (ab && ba) return Relation::Equal;
    if (ab) return Relation::StrictSubset;
    if (ba) return Relation::StrictSuperset;
    return Relation::Incomparable;
}

enum class CaseRow { Case0, A_I_1, A_I_2, A_I_3a, A_I_3b, A_II, B };

inline const char* to_string(CaseRow r) {
    switch (r) {
        case CaseRow::Case0: return "Case 0";
        case CaseRow::A_I_1: return "A.I.1";
        case CaseRow::A_I_2: return "A.I.2";
        case CaseRow::A_I_3a: return "A.I.3a";
        case CaseRow::A_I_3b: return "A.I.3b";
        case CaseRow::A_II: return "A.II";
        default: return "Case B";
    }
}

enum class Subcase { I, II, III };

inline const char* to_string(Subcase s) {
    switch (s) {
        case Subcase::I: return "I";
        case Subcase::II: return "II";
        default: return "III";
    }
}

inline CaseRow table_row(const AntennaConfig& c) {
    if (c.n2 >= c.m1) return CaseRow::Case0;
    if (c.m2 < c.n2) return CaseRow::B;
    if (c.m2 < c.n1) return CaseRow::A_II;
    if (c.m1 <= c.n1) return CaseRow::A_I_1;
    if (c.m2 == c.n2) return CaseRow::A_I_2;
    if (c.m2 == c.n1) return CaseRow::A_I_3a;
    return CaseRow::A_I_3b;
}

// Orientation in which the scheme is built: the transmitter with instantaneous
// CSIT is T1. Extra antennas at the delayed-CSIT transmitter beyond N1+N2 are
// removed, which leaves the region unchanged.
inline AntennaConfig scheme_frame(const AntennaConfig& cfg, RegionModel model) {
    AntennaConfig f = (model == RegionModel::Hybrid2 ? relabel_users(cfg) : cfg);
    f.m2 = std::min(f.m2, f.n1 + f.n2);
    return f;
}

inline Subcase frame_subcase(const AntennaConfig& f) {
    if (f.m2 <= f.m1) return Subcase::I;
    if (f.n1 * (f.m2 - f.n2) <= f.m2 * (f.m1 - f.n2)) return Subcase::II;
    return Subcase::III;
}

struct RegionCase {
    CaseRow row = CaseRow::Case0;
    std::optional<Subcase> hybrid1;
    std::optional<Subcase> hybrid2;
};

inline RegionCase classify(const AntennaConfig& cfg) {
    RegionCase out;
    out.row = table_row(cfg);
    if (out.row == CaseRow::A_I_3b) {
        out.hybrid1 = frame_subcase(scheme_frame(cfg, RegionModel::Hybrid1));
        out.hybrid2 = frame_subcase(scheme_frame(cfg, RegionModel::Hybrid2));
    }
    return out;
}

struct RegionRelations {
    Relation d_h1, h1_i, d_h2, h2_i;
};

inline RegionRelations relations(const AntennaConfig& cfg) {
    auto d = region(cfg, RegionModel::Delayed);
    auto h1 = region(cfg, RegionModel::Hybrid1);
    auto h2 = region(cfg, RegionModel::Hybrid2);
    auto i = region(cfg, RegionModel::Instantaneous);
    return RegionRelations{compare(d, h1), compare(h1, i), compare(d, h2), compare(h2, i)};
}

inline std::string to_string(const RegionRelations& r) {
    return std::string("D^d ") + to_string(r.d_h1) + " D^h1 " + to_string(r.h1_i) + " D^i; "
        + "D^d " + to_string(r.d_h2) + " D^h2 " + to_string(r.h2_i) + " D^i";
}

enum class ModelClass { Hybrid1Class, Hybrid2Class, InstantClass, DelayedClass, Unknown };

inline const char* to_string(ModelClass c) {
    switch (c) {
        case ModelClass::Hybrid1Class: return "hybrid1";
        case ModelClass::Hybrid2Class: return "hybrid2";
        case ModelClass::InstantClass: return "instantaneous";
        case ModelClass::DelayedClass: return "delayed";
        default: return "unknown";
    }
}

inline constexpr std::array<ModelClass, 4> known_classes{
    ModelClass::InstantClass, ModelClass::Hybrid1Class, ModelClass::Hybrid2Class, ModelClass::DelayedClass
};

// Membership test for one class, evaluated independently of the others.
inline bool in_class(const CsitModel& m, ModelClass c) {
    using enum CsitState;
    using T = Transmitter;
    auto known = [](CsitState s) { return s != Unknown; };
    CsitState a = m.state(T::T1, Link::H21);
    CsitState b = m.state(T::T2, Link::H12);
    switch (c) {
        case ModelClass::Hybrid1Class: return a == Instant && b == Delayed && known(m.state(T::T2, Link::H11));
        case ModelClass::Hybrid2Class: return b == Instant && a == Delayed && known(m.state(T::T1, Link::H22));
        case ModelClass::InstantClass: return a == Instant && b == Instant;
        case ModelClass::DelayedClass:
            return a == Delayed && b == Delayed && known(m.state(T::T1, Link::H22)) && known(m.state(T::T2, Link::H11));
        default: return false;
    }
}

inline ModelClass classify_octuple(const CsitModel& m) {
    for (auto c : known_classes) {
        if (in_class(m, c)) return c;
    }
    return ModelClass::Unknown;
}

// Canonical configs with every antenna count in [1, max_antennas], lexicographic in (m1, m2, n1, n2).
inline std::vector<AntennaConfig> canonical_sweep(int max_antennas) {
    std::vector<AntennaConfig> out;
    for (int m1 = 1; m1 <= max_antennas; ++m1) {
        for (int m2 = 1; m2 <= max_antennas; ++m2) {
            for (int n1 = 1; n1 <= max_antennas; ++n1) {
                for (int n2 = 1; n2 <= n1; ++n2) {
                    out.push_back(AntennaConfig{m1, m2, n1, n2, false});
                }
            }
        }
    }
    return out;
}

}

#endif
