// Runs the (4,5,3,2) hybrid-1 scheme once and prints the schedule and recovery error.
#include "hia/sim.hpp"

#include <iostream>

int main() {
    using namespace hia;
    AntennaConfig cfg{4, 5, 3, 2, false};
    auto params = hia_parameters(cfg, RegionModel::Hybrid1, SchemeCorner::Primary);
    auto plan = build_plan(cfg, params, named_model("hybrid1"));

    for (int t = 0; t < plan.T(); ++t) {
        const auto& s = plan.slots[t];
        std::cout << "slot " << t + 1 << ": T1 sends";
        for (const auto& u : s.t1) std::cout << " u" << u.symbol + 1;
        std::cout << "; T2 sends";
        for (const auto& it : s.t2) {
            if (it.fresh) {
                std::cout << " v" << it.symbol + 1;
            } else {
                std::cout << " I(" << it.ledger.slot + 1 << "," << it.ledger.antenna + 1 << ")";
            }
        }
        std::cout << "\n";
    }

    Rng rng(42);
    auto ch = sample_realization(cfg, plan.T(), rng);
    auto sym = draw_symbols(plan, rng);
    auto out = execute_and_decode(plan, ch, sym);
    std::cout << "achieved " << to_string(plan.dof()) << ", max relative error " << out.max_rel_error
              << ", min conditioning " << out.min_conditioning << "\n";
    return out.rank_ok && out.max_rel_error <= recovery_tolerance ? 0 : 1;
}
