// Finite-reservoir thermodynamics (ideal Fermi gas, flat band)
//
// N(T, mu) = int_b^inf rho f(e) de,  E(T, mu) = int_b^inf e rho f(e) de, with
// b the band bottom (0 unless configured). Closed forms:
//   N = rho T log(1 + e^x),  E = b N + rho T^2 F1(x),  x = (mu - b)/T.

#pragma once

#include <Eigen/Core>

#include "qhp/rates.hpp"
#include "qhp/transport.hpp"

namespace qhp {

struct BathThermo {
    double n{};
    double e{};
    /// [dN/dmu, dN/dT; dE/dmu, dE/dT]
    Eigen::Matrix2d jacobian{Eigen::Matrix2d::Zero()};
};

double bath_number(const BathState& bath);
double bath_energy(const BathState& bath);
Eigen::Matrix2d bath_jacobian(const BathState& bath);
BathThermo bath_thermo(const BathState& bath);

struct BathRates {
    double mu_dot{};
    double temperature_dot{};
};

/// Solves jacobian * (mu_dot, T_dot) = (N_dot, E_dot) per reservoir. Throws
/// NumericalError when the Jacobian is numerically singular.
PerReservoir<BathRates> bath_derivatives(const Currents& currents, const PerReservoir<BathState>& baths);

} // namespace qhp
