#include "qhp/thermo.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <string>

#include "qhp/error.hpp"
#include "qhp/polylog.hpp"

namespace qhp {

namespace {

double scaled_mu(const BathState& b) { return (b.chemical_potential - b.band_bottom) / b.temperature; }

// 1/(1 + exp(-x))
double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + e^x) - x logistic(x) = dN/dT / rho
double number_temperature_slope(double x) {
    if (x > 0.0) return std::log1p(std::exp(-x)) + x * logistic(-x);
    return std::log1p(std::exp(x)) - x * logistic(x);
}

// 2 F1(x) - x log(1 + e^x) = (2 E0 - mu' N) / (rho T^2), cancellation-free for large x
double energy_temperature_slope(double x) {
    if (x > 0.0) {
        constexpr double pi2_over_3 = std::numbers::pi * std::numbers::pi / 3.0;
        return pi2_over_3 + 2.0 * dilog(-std::exp(-x)) - x * std::log1p(std::exp(-x));
    }
    return 2.0 * fermi_dirac_f1(x) - x * softplus(x);
}

} // namespace

double bath_number(const BathState& bath) {
    bath.validate();
    return bath.dos * bath.temperature * softplus(scaled_mu(bath));
}

double bath_energy(const BathState& bath) {
    bath.validate();
    const double t = bath.temperature;
    return bath.band_bottom * bath_number(bath) + bath.dos * t * t * fermi_dirac_f1(scaled_mu(bath));
}

Eigen::Matrix2d bath_jacobian(const BathState& bath) {
    bath.validate();
    const double x = scaled_mu(bath);
    const double rho = bath.dos;
    const double t = bath.temperature;
    const double b = bath.band_bottom;

    const double dn_dmu = rho * logistic(x);
    const double dn_dt = rho * number_temperature_slope(x);
    const double n = rho * t * softplus(x);

    Eigen::Matrix2d j;
    j(0, 0) = dn_dmu;
    j(0, 1) = dn_dt;
    j(1, 0) = n + b * dn_dmu;
    j(1, 1) = b * dn_dt + rho * t * energy_temperature_slope(x);
    return j;
}

BathThermo bath_thermo(const BathState& bath) {
    return BathThermo{bath_number(bath), bath_energy(bath), bath_jacobian(bath)};
}

PerReservoir<BathRates> bath_derivatives(const Currents& currents, const PerReservoir<BathState>& baths) {
    PerReservoir<BathRates> out;
    for (Reservoir nu : kReservoirs) {
        const Eigen::Matrix2d j = bath_jacobian(baths[nu]);
        const double det = j.determinant();
        const double scale = std::abs(j(0, 0) * j(1, 1)) + std::abs(j(0, 1) * j(1, 0));
        if (!(std::abs(det) > 1e-12 * scale))
            throw NumericalError("bath_derivatives: singular thermodynamic Jacobian for reservoir " +
                                 std::string(to_string(nu)) + " (T = " + std::to_string(baths[nu].temperature) + ")");
        const Eigen::Vector2d flows(currents.particle[nu], currents.energy[nu]);
        const Eigen::Vector2d rates = j.inverse() * flows;
        out[nu] = BathRates{rates(0), rates(1)};
    }
    return out;
}

} // namespace qhp
