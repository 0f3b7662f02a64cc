#include "qhp/rates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhp/error.hpp"

namespace qhp {

void BathState::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw ValidationError("bath: temperature must be > 0 (got " + std::to_string(temperature) + ")");
    if (!(dos > 0.0) || !std::isfinite(dos))
        throw ValidationError("bath: density of states rho must be > 0 (got " + std::to_string(dos) + ")");
    if (!std::isfinite(chemical_potential) || !std::isfinite(band_bottom))
        throw ValidationError("bath: chemical potential and band bottom must be finite");
}

namespace {

// 1/(exp(x) + 1) for any finite x.
double logistic_complement(double x) {
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

} // namespace

double fermi_birth(double eps, const BathState& bath) {
    return logistic_complement((eps - bath.chemical_potential) / bath.temperature);
}

double fermi_death(double eps, const BathState& bath) {
    return logistic_complement((bath.chemical_potential - eps) / bath.temperature);
}

double golden_rule_rate(int alpha, Reservoir nu, int m, Process eta, double quasienergy, const CouplingFourier& c,
                        const BathState& bath) {
    const double energy = quasienergy + m * c.omega();
    if (energy < bath.band_bottom) return 0.0;
    const double weight = std::norm(c.at(nu, alpha, m));
    if (weight == 0.0) return 0.0;
    const double f = eta == Process::Birth ? fermi_birth(energy, bath) : fermi_death(energy, bath);
    return 2.0 * std::numbers::pi * weight * bath.dos * f;
}

RateTable::RateTable(int m_max)
    : m_max_(m_max), r_(static_cast<std::size_t>(2 * kModes * 2 * (2 * m_max + 1)), 0.0) {}

void RateTable::assemble() {
    per_res_.fill(0.0);
    total_.fill(0.0);
    for (Process eta : {Process::Birth, Process::Death}) {
        for (int a = 0; a < kModes; ++a) {
            const auto ti = static_cast<std::size_t>(static_cast<int>(eta) * kModes + a);
            for (Reservoir nu : kReservoirs) {
                double sum = 0.0;
                for (int m = -m_max_; m <= m_max_; ++m) sum += harmonic(eta, a, nu, m);
                per_res_[ti * 2 + index(nu)] = sum;
                total_[ti] += sum;
            }
        }
    }
}

RateTable build_rate_table(const FloquetSolution& solution, const CouplingFourier& c,
                           const PerReservoir<BathState>& baths, int m_max) {
    if (m_max > c.m_max())
        throw ValidationError("build_rate_table: m_max exceeds the computed Fourier components");
    for (Reservoir nu : kReservoirs) baths[nu].validate();

    RateTable table(m_max);
    for (int a = 0; a < kModes; ++a) {
        const double q = solution.quasienergies[static_cast<std::size_t>(a)];
        for (Reservoir nu : kReservoirs)
            for (int m = -m_max; m <= m_max; ++m)
                for (Process eta : {Process::Birth, Process::Death})
                    table.set(eta, a, nu, m, golden_rule_rate(a, nu, m, eta, q, c, baths[nu]));
    }
    table.assemble();
    return table;
}

} // namespace qhp
