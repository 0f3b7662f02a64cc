// Time evolution of two finite reservoirs driven by the pump
//
// State (mu_L, T_L, mu_R, T_R) obeys d(mu, T)/dt = J^{-1} (N_dot, E_dot) per
// reservoir, with currents from the steady Floquet occupations at the current
// bath state. Time is reported in units of tau = 1/(2 pi gamma_R^2 rho_R).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhp/model.hpp"
#include "qhp/thermo.hpp"

namespace qhp {

struct TrajectoryConfig {
    double dt{1.0};                 ///< RK4 step, units of tau
    double t_end{1000.0};           ///< units of tau
    double sample_interval{10.0};   ///< rounded to a whole number of steps
    bool verify_step_halving{true};
    bool record_currents{false};
};

struct TrajectorySample {
    double t{};  ///< units of tau
    PerReservoir<BathState> baths;
    double right_temperature_rate{};  ///< dT_R/dt per tau
    std::optional<Currents> currents;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double time_unit{};  ///< tau in units of 1/J0
    /// Max over samples of |y(dt) - y(dt/2)| / max(|y|, T_ref); NaN if not verified.
    double step_halving_error{};
    bool completed{true};
    std::string diagnostic;

    /// Sample with the smallest T_R; throws if empty.
    const TrajectorySample& coldest_right() const;
};

/// Classical RK4 with fixed step; bath rates re-evaluated at every stage.
/// Stops early (completed = false, diagnostic set) when a temperature would
/// become non-positive or the Jacobian becomes singular.
Trajectory integrate_trajectory(const PerReservoir<BathState>& initial, const HeatPumpModel& model,
                                const TrajectoryConfig& config);

/// Convenience overload that builds the Floquet data first.
Trajectory integrate_trajectory(const PerReservoir<BathState>& initial, const SystemParams& sys,
                                const DriveParams& drive, const PerReservoir<RCParams>& rc,
                                const TrajectoryConfig& config, const FloquetOptions& floquet = {});

} // namespace qhp
