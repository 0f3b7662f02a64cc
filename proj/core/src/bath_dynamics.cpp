#include "qhp/bath_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "qhp/error.hpp"

namespace qhp {

const TrajectorySample& Trajectory::coldest_right() const {
    if (samples.empty()) throw ValidationError("trajectory has no samples");
    return *std::min_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
        return a.baths.right().temperature < b.baths.right().temperature;
    });
}

namespace {

using State = Eigen::Vector4d;  // mu_L, T_L, mu_R, T_R

PerReservoir<BathState> to_baths(const State& y, const PerReservoir<BathState>& templ) {
    PerReservoir<BathState> b = templ;
    b.left().chemical_potential = y(0);
    b.left().temperature = y(1);
    b.right().chemical_potential = y(2);
    b.right().temperature = y(3);
    return b;
}

State to_state(const PerReservoir<BathState>& b) {
    return State(b.left().chemical_potential, b.left().temperature, b.right().chemical_potential,
                 b.right().temperature);
}

struct StopIntegration {
    std::string reason;
};

class Rk4 {
public:
    Rk4(const HeatPumpModel& model, const PerReservoir<BathState>& templ, double tau)
        : model_(model), templ_(templ), tau_(tau) {}

    State rhs(const State& y) const {
        if (!(y(1) > 0.0) || !(y(3) > 0.0))
            throw StopIntegration{"temperature reached a non-positive value"};
        try {
            const PointEvaluation p = model_.evaluate(to_baths(y, templ_));
            const auto& r = p.bath_rates;
            return tau_ * State(r.left().mu_dot, r.left().temperature_dot, r.right().mu_dot, r.right().temperature_dot);
        } catch (const NumericalError& e) {
            throw StopIntegration{e.what()};
        }
    }

    State step(const State& y, double h) const {
        const State k1 = rhs(y);
        const State k2 = rhs(y + 0.5 * h * k1);
        const State k3 = rhs(y + 0.5 * h * k2);
        const State k4 = rhs(y + h * k3);
        return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

private:
    const HeatPumpModel& model_;
    PerReservoir<BathState> templ_;
    double tau_;
};

} // namespace

Trajectory integrate_trajectory(const PerReservoir<BathState>& initial, const HeatPumpModel& model,
                                const TrajectoryConfig& config) {
    for (Reservoir nu : kReservoirs) initial[nu].validate();
    if (!(config.dt > 0.0) || !(config.t_end > 0.0))
        throw ValidationError("integrate_trajectory: dt and t_end must be > 0");

    Trajectory traj;
    traj.time_unit = model.time_unit(initial.right());
    const Rk4 rk(model, initial, traj.time_unit);

    const long n_steps = std::max(1L, std::lround(config.t_end / config.dt));
    const double h = config.t_end / static_cast<double>(n_steps);
    const long every = std::max(1L, std::lround(config.sample_interval / h));
    const double t_ref = std::min(initial.left().temperature, initial.right().temperature);

    auto record = [&](double t, const State& y) {
        TrajectorySample s;
        s.t = t;
        s.baths = to_baths(y, initial);
        const PointEvaluation p = model.evaluate(s.baths);
        s.right_temperature_rate = traj.time_unit * p.bath_rates.right().temperature_dot;
        if (config.record_currents) s.currents = p.currents;
        traj.samples.push_back(std::move(s));
    };

    State y = to_state(initial);
    State y_half = y;
    double max_err = 0.0;
    try {
        record(0.0, y);
        for (long k = 1; k <= n_steps; ++k) {
            y = rk.step(y, h);
            if (config.verify_step_halving) y_half = rk.step(rk.step(y_half, 0.5 * h), 0.5 * h);
            if (k % every == 0 || k == n_steps) {
                if (!(y(1) > 0.0) || !(y(3) > 0.0)) throw StopIntegration{"temperature reached a non-positive value"};
                record(h * static_cast<double>(k), y);
                if (config.verify_step_halving)
                    for (int i = 0; i < 4; ++i)
                        max_err = std::max(max_err, std::abs(y(i) - y_half(i)) / std::max(std::abs(y(i)), t_ref));
            }
        }
    } catch (const StopIntegration& stop) {
        traj.completed = false;
        traj.diagnostic = stop.reason;
    }
    traj.step_halving_error = config.verify_step_halving ? max_err : std::numeric_limits<double>::quiet_NaN();
    return traj;
}

Trajectory integrate_trajectory(const PerReservoir<BathState>& initial, const SystemParams& sys,
                                const DriveParams& drive, const PerReservoir<RCParams>& rc,
                                const TrajectoryConfig& config, const FloquetOptions& floquet) {
    const HeatPumpModel model(sys, drive, rc, floquet);
    return integrate_trajectory(initial, model, config);
}

} // namespace qhp
