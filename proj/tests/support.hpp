#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qhp/floquet.hpp"
#include "qhp/scenario.hpp"

namespace qhp::test {

inline std::string scenario_path(const std::string& name) { return std::string(QHP_SCENARIO_DIR) + "/" + name; }

inline ScenarioConfig preset(const std::string& name) { return load_config(scenario_path(name + ".json")); }

inline double rel_diff(double a, double b, double floor = 0.0) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor, 1e-300});
}

/// Fig-3 system with both baths at the left bath's configured state.
inline PerReservoir<BathState> equal_baths(const ScenarioConfig& c) {
    auto b = c.initial_baths();
    b.right().temperature = b.left().temperature;
    b.right().chemical_potential = b.left().chemical_potential;
    return b;
}

/// q + m omega for the harmonic m carrying most of mode a's RC weight. For an
/// undriven system this is the mode's energy.
inline double mode_energy(const FloquetData& f, int a) {
    int best = 0;
    double weight = -1.0;
    for (int m = -f.coupling.m_max(); m <= f.coupling.m_max(); ++m) {
        double w = 0.0;
        for (Reservoir nu : kReservoirs) w += std::norm(f.coupling.at(nu, a, m));
        if (w > weight) {
            weight = w;
            best = m;
        }
    }
    return f.solution.quasienergies[static_cast<std::size_t>(a)] + best * f.solution.omega;
}

} // namespace qhp::test
