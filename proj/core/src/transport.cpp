#include "qhp/transport.hpp"

#include <string>

#include "qhp/error.hpp"

namespace qhp {

SteadyState steady_occupations(const RateTable& rates) {
    SteadyState ss;
    for (int a = 0; a < kModes; ++a) {
        const double birth = rates.total(Process::Birth, a);
        const double death = rates.total(Process::Death, a);
        if (!(birth + death > 0.0))
            throw NumericalError("steady_occupations: mode " + std::string(to_string(static_cast<ModeLabel>(a))) +
                                 " is decoupled from both reservoirs (ill-posed steady state)");
        ss.occupation[static_cast<std::size_t>(a)] = birth / (birth + death);
    }
    return ss;
}

Currents currents(const RateTable& rates, const SteadyState& ss, const std::array<double, kModes>& quasienergies,
                  double omega) {
    // Flows are written as (Rd_nu R* - R*_nu Rd) / R with n = R*/R and 1 - n = Rd/R,
    // which avoids cancellation. Energy flow splits into q times the particle
    // flow plus omega times the photon-number flow sum_m m (...). Photon numbers are
    // counted from the mode's dominant harmonic, so an undriven mode (one harmonic)
    // carries energy exactly (q + m omega) times its particle flow.
    Currents out;
    for (int a = 0; a < kModes; ++a) {
        const double birth = rates.total(Process::Birth, a);
        const double death = rates.total(Process::Death, a);
        const double total = birth + death;
        const double n = ss.occupation[static_cast<std::size_t>(a)];
        const double nbar = death / total;
        const double q = quasienergies[static_cast<std::size_t>(a)];

        // Two reservoirs: the left flow is (Rd_L R*_R - R*_L Rd_R)/R and the right one its exact negative.
        const double particle_left = (rates.per_reservoir(Process::Death, a, Reservoir::Left) *
                                          rates.per_reservoir(Process::Birth, a, Reservoir::Right) -
                                      rates.per_reservoir(Process::Birth, a, Reservoir::Left) *
                                          rates.per_reservoir(Process::Death, a, Reservoir::Right)) /
                                     total;
        out.particle.left() += particle_left;
        out.particle.right() -= particle_left;

        int carrier = 0;
        double carrier_rate = -1.0;
        for (int m = -rates.m_max(); m <= rates.m_max(); ++m) {
            double r = 0.0;
            for (Reservoir nu : kReservoirs)
                r += rates.harmonic(Process::Birth, a, nu, m) + rates.harmonic(Process::Death, a, nu, m);
            if (r > carrier_rate) {
                carrier_rate = r;
                carrier = m;
            }
        }
        const double mode_energy = q + carrier * omega;

        for (Reservoir nu : kReservoirs) {
            double photons = 0.0;
            for (int m = -rates.m_max(); m <= rates.m_max(); ++m) {
                if (m == carrier) continue;
                photons += (m - carrier) * (rates.harmonic(Process::Death, a, nu, m) * n -
                                rates.harmonic(Process::Birth, a, nu, m) * nbar);
            }
            const double particle = nu == Reservoir::Left ? particle_left : -particle_left;
            out.energy[nu] += mode_energy * particle + omega * photons;
        }
    }
    return out;
}

} // namespace qhp
