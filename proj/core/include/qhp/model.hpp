// One driven heat pump: Floquet data plus the rate/transport pipeline

#pragma once

#include <memory>

#include "qhp/floquet.hpp"
#include "qhp/rates.hpp"
#include "qhp/thermo.hpp"
#include "qhp/transport.hpp"

namespace qhp {

struct PointEvaluation {
    RateTable rates;
    SteadyState steady;
    Currents currents;
    PerReservoir<BathRates> bath_rates;  ///< per unit of 1/J0 (hbar = 1)
};

/// Holds the bath-independent Floquet data; evaluate() is const and safe to
/// call concurrently.
class HeatPumpModel {
public:
    HeatPumpModel(const SystemParams& sys, const DriveParams& drive, const PerReservoir<RCParams>& rc,
                  const FloquetOptions& options = {});

    const FloquetData& floquet() const { return *floquet_; }
    const SystemParams& system() const { return sys_; }
    const DriveParams& drive() const { return drive_; }
    const PerReservoir<RCParams>& rc() const { return rc_; }
    int m_max() const { return m_max_; }

    PointEvaluation evaluate(const PerReservoir<BathState>& baths) const;

    /// tau = 1 / (2 pi gamma_R^2 rho_R), in units of 1/J0.
    double time_unit(const BathState& right) const;

private:
    SystemParams sys_;
    DriveParams drive_;
    PerReservoir<RCParams> rc_;
    int m_max_;
    std::shared_ptr<const FloquetData> floquet_;
};

} // namespace qhp
