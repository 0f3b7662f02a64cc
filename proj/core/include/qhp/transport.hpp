// Steady-state Floquet occupations and reservoir currents

#pragma once

#include <array>

#include "qhp/rates.hpp"

namespace qhp {

struct SteadyState {
    std::array<double, kModes> occupation{};
};

/// Signs: positive values flow out of the extended system into reservoir nu.
struct Currents {
    PerReservoir<double> particle{};  ///< dN_nu/dt
    PerReservoir<double> energy{};    ///< dE_nu/dt

    /// Heat current into nu, dE_nu/dt - mu_nu dN_nu/dt.
    double heat(Reservoir nu, double chemical_potential) const {
        return energy[nu] - chemical_potential * particle[nu];
    }
    /// Net power absorbed from the drive, dE_L/dt + dE_R/dt (zero without driving).
    double drive_power() const { return energy.left() + energy.right(); }
};

/// <n_alpha> = R*_alpha / (R*_alpha + R†_alpha). Throws NumericalError for a
/// mode with no coupling at all.
SteadyState steady_occupations(const RateTable& rates);

/// ss must hold the steady occupations of rates.
Currents currents(const RateTable& rates, const SteadyState& ss, const std::array<double, kModes>& quasienergies,
                  double omega);

} // namespace qhp
