#include "qhp/model.hpp"

#include <numbers>

namespace qhp {

HeatPumpModel::HeatPumpModel(const SystemParams& sys, const DriveParams& drive, const PerReservoir<RCParams>& rc,
                             const FloquetOptions& options)
    : sys_(sys), drive_(drive), rc_(rc), m_max_(options.m_max),
      floquet_(std::make_shared<const FloquetData>(solve_floquet(sys, drive, rc, options))) {}

PointEvaluation HeatPumpModel::evaluate(const PerReservoir<BathState>& baths) const {
    PointEvaluation p;
    p.rates = build_rate_table(floquet_->solution, floquet_->coupling, baths, m_max_);
    p.steady = steady_occupations(p.rates);
    p.currents = currents(p.rates, p.steady, floquet_->solution.quasienergies, drive_.omega);
    p.bath_rates = bath_derivatives(p.currents, baths);
    return p;
}

double HeatPumpModel::time_unit(const BathState& right) const {
    const double gamma = rc_.right().residual_coupling;
    return 1.0 / (2.0 * std::numbers::pi * gamma * gamma * right.dos);
}

} // namespace qhp
