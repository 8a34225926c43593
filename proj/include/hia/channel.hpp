#ifndef HIA_CHANNEL_HPP
#define HIA_CHANNEL_HPP

#include "numerics.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hia {

struct ZeroAntennas : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownName : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AntennaConfig {
    int m1 = 1, m2 = 1, n1 = 1, n2 = 1;
    bool swapped = false;

    bool canonical() const {
        return n1 >= n2;
    }

    bool operator==(const AntennaConfig&) const = default;
};

inline std::string to_string(const AntennaConfig& cfg) {
    return "(" + std::to_string(cfg.m1) + "," + std::to_string(cfg.m2) + "," + std::to_string(cfg.n1) + "," + std::to_string(cfg.n2) + ")";
}

// Exchanges the roles of the two users. The result is generally not canonical.
inline AntennaConfig relabel_users(const AntennaConfig& cfg) {
    return AntennaConfig{cfg.m2, cfg.m1, cfg.n2, cfg.n1, !cfg.swapped};
}

inline AntennaConfig canonicalize(int m1, int m2, int n1, int n2) {
    if (m1 < 1 || m2 < 1 || n1 < 1 || n2 < 1) {
        throw ZeroAntennas("antenna counts must all be at least 1");
    }
    AntennaConfig cfg{m1, m2, n1, n2, false};
    if (n1 < n2) {
        cfg = relabel_users(cfg);
    }
    return cfg;
}

inline AntennaConfig canonicalize(const AntennaConfig& cfg) {
    AntennaConfig out = canonicalize(cfg.m1, cfg.m2, cfg.n1, cfg.n2);
    out.swapped = (out.swapped != cfg.swapped);
    return out;
}

enum class CsitState { Unknown, Delayed, Instant };
enum class Transmitter { T1, T2 };
enum class Link { H11, H12, H21, H22 };

inline constexpr std::array<Transmitter, 2> all_transmitters{Transmitter::T1, Transmitter::T2};
inline constexpr std::array<Link, 4> all_links{Link::H11, Link::H12, Link::H21, Link::H22};

inline const char* to_string(Transmitter t) {
    return t == Transmitter::T1 ? "T1" : "T2";
}

inline const char* to_string(Link l) {
    switch (l) {
        case Link::H11: return "H11";
        case Link::H12: return "H12";
        case Link::H21: return "H21";
        default: return "H22";
    }
}

inline char state_letter(CsitState s) {
    switch (s) {
        case CsitState::Unknown: return 'U';
        case CsitState::Delayed: return 'D';
        default: return 'I';
    }
}

inline Transmitter other(Transmitter t) {
    return t == Transmitter::T1 ? Transmitter::T2 : Transmitter::T1;
}

inline Link mirror(Link l) {
    switch (l) {
        case Link::H11: return Link::H22;
        case Link::H12: return Link::H21;
        case Link::H21: return Link::H12;
        default: return Link::H11;
    }
}

class CsitModel {
public:
    CsitModel() {
        my_slots.fill(CsitState::Unknown);
    }

    CsitState state(Transmitter t, Link l) const {
        return my_slots[slot(t, l)];
    }

    CsitModel& set(Transmitter t, Link l, CsitState s) {
        my_slots[slot(t, l)] = s;
        return *this;
    }

    CsitModel with(Transmitter t, Link l, CsitState s) const {
        CsitModel out = *this;
        out.set(t, l, s);
        return out;
    }

    // Base-3 code over the eight slots, T1 links first.
    int code() const {
        int c = 0;
        for (auto s : my_slots) {
            c = c * 3 + static_cast<int>(s);
        }
        return c;
    }

    static CsitModel from_code(int c) {
        CsitModel out;
        for (int i = 7; i >= 0; --i) {
            out.my_slots[i] = static_cast<CsitState>(c % 3);
            c /= 3;
        }
        return out;
    }

    static constexpr int count = 6561;

    bool operator==(const CsitModel&) const = default;

private:
    static std::size_t slot(Transmitter t, Link l) {
        return static_cast<std::size_t>(t) * 4 + static_cast<std::size_t>(l);
    }

    std::array<CsitState, 8> my_slots;
};

inline std::string to_string(const CsitModel& m) {
    std::string out;
    for (auto t : all_transmitters) {
        if (!out.empty()) {
            out += ' ';
        }
        out += to_string(t);
        out += '[';
        for (auto l : all_links) {
            if (l != Link::H11) {
                out += ',';
            }
            out += to_string(l);
            out += '=';
            out += state_letter(m.state(t, l));
        }
        out += ']';
    }
    return out;
}

// Knowledge seen from the relabelled system: new T1 is old T2, new H11 is old H22, and so on.
inline CsitModel relabel_users(const CsitModel& m) {
    CsitModel out;
    for (auto t : all_transmitters) {
        for (auto l : all_links) {
            out.set(t, l, m.state(other(t), mirror(l)));
        }
    }
    return out;
}

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{
        "hybrid1", "hybrid2", "weaker-hybrid1", "weaker-hybrid2",
        "enhanced-hybrid1", "enhanced-hybrid2", "delayed", "instantaneous"
    };
    return names;
}

inline CsitModel named_model(std::string_view name) {
    using enum CsitState;
    using T = Transmitter;
    CsitModel m;
    if (name == "hybrid1" || name == "weaker-hybrid1") {
        m.set(T::T1, Link::H21, Instant);
        if (name == "hybrid1") {
            m.set(T::T1, Link::H22, Instant);
        }
        m.set(T::T2, Link::H11, Delayed).set(T::T2, Link::H12, Delayed);
    } else if (name == "hybrid2" || name == "weaker-hybrid2") {
        m = relabel_users(named_model(name == "hybrid2" ? "hybrid1" : "weaker-hybrid1"));
    } else if (name == "enhanced-hybrid1") {
        for (auto t : all_transmitters) {
            for (auto l : all_links) {
                m.set(t, l, Instant);
            }
        }
        m.set(T::T2, Link::H12, Delayed);
    } else if (name == "enhanced-hybrid2") {
        m = relabel_users(named_model("enhanced-hybrid1"));
    } else if (name == "delayed" || name == "instantaneous") {
        CsitState s = (name == "delayed" ? Delayed : Instant);
        m.set(T::T1, Link::H21, s).set(T::T1, Link::H22, s);
        m.set(T::T2, Link::H12, s).set(T::T2, Link::H11, s);
    } else {
        throw UnknownName("unknown CSIT model '" + std::string(name) + "'");
    }
    return m;
}

struct ChannelSlot {
    ComplexMatrix h11, h12, h21, h22;

    const ComplexMatrix& link(Link l) const {
        switch (l) {
            case Link::H11: return h11;
            case Link::H12: return h12;
            case Link::H21: return h21;
            default: return h22;
        }
    }
};

struct ChannelRealization {
    AntennaConfig cfg;
    std::vector<ChannelSlot> slots;
};

inline ChannelRealization sample_realization(const AntennaConfig& cfg, int slots, Rng& rng) {
    if (slots < 1) {
        throw std::invalid_argument("a realization needs at least one slot");
    }
    ChannelRealization out{cfg, {}};
    out.slots.reserve(slots);
    for (int t = 0; t < slots; ++t) {
        ChannelSlot s;
        s.h11 = sample_gaussian(cfg.n1, cfg.m1, rng);
        s.h12 = sample_gaussian(cfg.n1, cfg.m2, rng);
        s.h21 = sample_gaussian(cfg.n2, cfg.m1, rng);
        s.h22 = sample_gaussian(cfg.n2, cfg.m2, rng);
        out.slots.push_back(std::move(s));
    }
    return out;
}

inline ChannelRealization relabel_users(const ChannelRealization& ch) {
    ChannelRealization out{relabel_users(ch.cfg), {}};
    out.slots.reserve(ch.slots.size());
    for (const auto& s : ch.slots) {
        out.slots.push_back(ChannelSlot{s.h22, s.h21, s.h12, s.h11});
    }
    return out;
}

}

#endif
