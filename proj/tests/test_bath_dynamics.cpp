#include <cmath>

#include <gtest/gtest.h>

#include "qhp/bath_dynamics.hpp"
#include "qhp/error.hpp"
#include "support.hpp"

using namespace qhp;

namespace {

ScenarioConfig short_fig5a(double j1 = 0.1) {
    ScenarioConfig c = test::preset("fig5a");
    c.family.reset();
    c.drive_input.j1 = j1;
    c.numerics.t_end = 200.0;
    c.numerics.sample_interval = 10.0;
    return resolve(std::move(c));
}

} // namespace

TEST(BathDynamics, UndrivenEqualBathsStayPut) {
    ScenarioConfig c = short_fig5a(0.0);
    const Trajectory tr = integrate_trajectory(c.initial_baths(), build_model(c), c.trajectory_config());
    ASSERT_TRUE(tr.completed);
    for (const auto& s : tr.samples)
        for (Reservoir nu : kReservoirs) {
            EXPECT_NEAR(s.baths[nu].temperature, 4.0, 1e-10);
            EXPECT_NEAR(s.baths[nu].chemical_potential, 20.0, 1e-10);
        }
}

TEST(BathDynamics, ParticleNumberIsConservedAlongTrajectory) {
    const ScenarioConfig c = short_fig5a();
    const Trajectory tr = integrate_trajectory(c.initial_baths(), build_model(c), c.trajectory_config());
    ASSERT_TRUE(tr.completed);
    const double n0 = bath_number(tr.samples.front().baths.left()) + bath_number(tr.samples.front().baths.right());
    for (const auto& s : tr.samples)
        EXPECT_NEAR(bath_number(s.baths.left()) + bath_number(s.baths.right()), n0, 1e-9 * n0) << "t=" << s.t;
}

TEST(BathDynamics, RightBathCoolsInitially) {
    const ScenarioConfig c = short_fig5a();
    const Trajectory tr = integrate_trajectory(c.initial_baths(), build_model(c), c.trajectory_config());
    EXPECT_LT(tr.samples.front().right_temperature_rate, 0.0);
    EXPECT_LT(tr.coldest_right().baths.right().temperature, 4.0);
    EXPECT_GT(tr.samples[1].baths.left().temperature, 4.0);
}

TEST(BathDynamics, StepHalvingErrorIsSmall) {
    const ScenarioConfig c = short_fig5a();
    const Trajectory tr = integrate_trajectory(c.initial_baths(), build_model(c), c.trajectory_config());
    EXPECT_LT(tr.step_halving_error, 1e-8);
    EXPECT_NEAR(tr.samples.back().t, 200.0, 1e-12);
    EXPECT_EQ(tr.samples.size(), 21u);
}

TEST(BathDynamics, DensityOfStatesScalingLeavesTrajectoryUnchanged) {
    // tau scales as 1/rho_R, so the same physical times need t_tau scaled by k.
    const ScenarioConfig c = short_fig5a();
    const HeatPumpModel model = build_model(c);
    const Trajectory base = integrate_trajectory(c.initial_baths(), model, c.trajectory_config());
    for (double k : {0.1, 10.0}) {
        auto baths = c.initial_baths();
        for (Reservoir nu : kReservoirs) baths[nu].dos *= k;
        TrajectoryConfig tc = c.trajectory_config();
        tc.dt *= k;
        tc.t_end *= k;
        tc.sample_interval *= k;
        const Trajectory tr = integrate_trajectory(baths, model, tc);
        ASSERT_EQ(tr.samples.size(), base.samples.size());
        EXPECT_NEAR(tr.time_unit * k, base.time_unit, 1e-12 * base.time_unit);
        for (std::size_t i = 0; i < tr.samples.size(); ++i)
            for (Reservoir nu : kReservoirs) {
                EXPECT_NEAR(tr.samples[i].baths[nu].temperature, base.samples[i].baths[nu].temperature,
                            1e-10 * base.samples[i].baths[nu].temperature);
                EXPECT_NEAR(tr.samples[i].baths[nu].chemical_potential, base.samples[i].baths[nu].chemical_potential,
                            1e-10 * base.samples[i].baths[nu].chemical_potential);
            }
    }
}

TEST(BathDynamics, StopsWhenTemperatureCollapses) {
    ScenarioConfig c = short_fig5a(1.0);
    auto baths = c.initial_baths();
    baths.right().temperature = 0.05;
    TrajectoryConfig tc = c.trajectory_config();
    tc.dt = 400.0;
    tc.t_end = 4000.0;
    tc.sample_interval = 400.0;
    const Trajectory tr = integrate_trajectory(baths, build_model(c), tc);
    EXPECT_FALSE(tr.completed);
    EXPECT_FALSE(tr.diagnostic.empty());
}

TEST(BathDynamics, RejectsInvalidConfig) {
    const ScenarioConfig c = short_fig5a();
    TrajectoryConfig tc = c.trajectory_config();
    tc.dt = 0.0;
    EXPECT_THROW(integrate_trajectory(c.initial_baths(), build_model(c), tc), ValidationError);
    auto baths = c.initial_baths();
    baths.left().temperature = -1.0;
    EXPECT_THROW(integrate_trajectory(baths, build_model(c), c.trajectory_config()), ValidationError);
}

TEST(BathDynamics, FamilyIsIndependentOfThreadCount) {
    ScenarioConfig c = test::preset("fig5a");
    c.numerics.t_end = 50.0;
    c = resolve(std::move(c));
    const auto one = run_family(c, 1);
    const auto many = run_family(c, 4);
    ASSERT_EQ(one.size(), 4u);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        ASSERT_EQ(one[k].trajectory.samples.size(), many[k].trajectory.samples.size());
        for (std::size_t i = 0; i < one[k].trajectory.samples.size(); ++i)
            EXPECT_EQ(one[k].trajectory.samples[i].baths.right().temperature,
                      many[k].trajectory.samples[i].baths.right().temperature);
    }
}
