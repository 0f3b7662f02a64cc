#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "qhp/error.hpp"
#include "qhp/floquet.hpp"

using namespace qhp;

namespace {

const double kLambdaR = std::sqrt(8.0);
const SystemParams kSys{50.0, 20.0, kLambdaR};
const DriveParams kDrive{1.0, 0.7, 20.0 - kLambdaR, 0.0};
const PerReservoir<RCParams> kRc{{RCParams{20.0, 50.0, 0.16}, RCParams{kLambdaR, 50.0, 0.16}}};

const FloquetData& fig3() {
    static const FloquetData data = solve_floquet(kSys, kDrive, kRc);
    return data;
}

Matrix4c expm_oracle(const Matrix4c& h, double t) {
    const Matrix4c a = Complex(0.0, -t) * h;
    return a.exp();
}

} // namespace

TEST(Floquet, HermitianStepMatchesMatrixExponential) {
    const Matrix4c h = lab_hamiltonian(0.21, kSys, kDrive);
    for (double dt : {1e-3, 0.05, 0.7}) EXPECT_LT((hermitian_step(h, dt) - expm_oracle(h, dt)).norm(), 1e-11);
}

TEST(Floquet, StaticLimitPropagatorIsExactExponential) {
    DriveParams stat = kDrive;
    stat.j1 = 0.0;
    const ChannelHamiltonian h(kSys, stat);
    const Propagator p = one_period_propagator(h);
    EXPECT_LT((p.unitary - expm_oracle(h.at(0.0), h.period())).norm(), 1e-10);
}

TEST(Floquet, StaticLimitModesAreEigenstates) {
    DriveParams stat = kDrive;
    stat.j1 = 0.0;
    const FloquetData d = solve_floquet(kSys, stat, kRc);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(lab_hamiltonian(0.0, kSys, stat));
    const double w = stat.omega;
    for (int i = 0; i < kModes; ++i) {
        double e = es.eigenvalues()(i);
        e -= w * std::round((e - 50.0) / w);
        double best = 1e9;
        for (double q : d.solution.quasienergies) best = std::min(best, std::abs(q - e));
        EXPECT_LT(best, 1e-8);
    }
    // No drive: every mode is stationary, so a single harmonic m (with
    // q + m omega = E) carries all of its weight, the same one for both reservoirs.
    for (int a = 0; a < kModes; ++a) {
        int carrier = 0;
        double best = -1.0;
        for (int m = -d.coupling.m_max(); m <= d.coupling.m_max(); ++m) {
            const double w = std::norm(d.coupling.at(Reservoir::Left, a, m)) + std::norm(d.coupling.at(Reservoir::Right, a, m));
            if (w > best) {
                best = w;
                carrier = m;
            }
        }
        double e = d.solution.quasienergies[a] + carrier * w;
        double closest = 1e9;
        for (int i = 0; i < kModes; ++i) closest = std::min(closest, std::abs(es.eigenvalues()(i) - e));
        EXPECT_LT(closest, 1e-8);
        for (Reservoir nu : kReservoirs)
            for (int m = -d.coupling.m_max(); m <= d.coupling.m_max(); ++m) {
                if (m == carrier) continue;
                EXPECT_LT(std::abs(d.coupling.at(nu, a, m)), 1e-10) << "m=" << m;
            }
    }
}

TEST(Floquet, PropagatorIsUnitaryAndConverged) {
    const Propagator p = one_period_propagator(ChannelHamiltonian(kSys, kDrive));
    EXPECT_LT((p.unitary.adjoint() * p.unitary - Matrix4c::Identity()).norm(), 1e-10);
    EXPECT_LT(p.convergence, 1e-8);
    EXPECT_GE(p.n_steps, 2048);
}

TEST(Floquet, RejectsTooFewSteps) {
    PropagatorOptions o;
    o.n_steps = 50;
    EXPECT_THROW(one_period_propagator(ChannelHamiltonian(kSys, kDrive), o), ValidationError);
}

TEST(Floquet, QuasienergiesMatchRotatingWaveAnalytics) {
    const auto& q = fig3().solution.quasienergies;
    const double up = 50.0 + kLambdaR, down = 50.0 - kLambdaR, g = 0.7 / 4.0;
    const double expected[kModes] = {up + g, up - g, down + g, down - g};
    for (int a = 0; a < kModes; ++a) EXPECT_NEAR(q[a] / expected[a], 1.0, 0.02) << to_string(static_cast<ModeLabel>(a));
    // Splitting inside each channel is J1/2 to leading order.
    EXPECT_NEAR(q[0] - q[1], 0.35, 0.05);
    EXPECT_NEAR(q[2] - q[3], 0.35, 0.05);
}

TEST(Floquet, QuasienergiesAreInsideFoldingZone) {
    const auto& s = fig3().solution;
    for (double q : s.quasienergies) {
        EXPECT_GT(q, s.eps0 - s.omega / 2.0);
        EXPECT_LE(q, s.eps0 + s.omega / 2.0);
    }
}

TEST(Floquet, CouplingsMatchAnalyticTable) {
    const auto& c = fig3().coupling;
    auto table = [](Reservoir nu, int a, int m) -> double {
        const auto label = static_cast<ModeLabel>(a);
        if (nu == Reservoir::Left) {
            if (label == ModeLabel::UpPlus || label == ModeLabel::UpMinus) return m == 1 ? 0.5 : 0.0;
            return m == -1 ? -0.5 : 0.0;
        }
        if (m != 0) return 0.0;
        switch (label) {
        case ModeLabel::UpPlus: return -0.5;
        case ModeLabel::UpMinus: return 0.5;
        case ModeLabel::DownPlus: return 0.5;
        case ModeLabel::DownMinus: return -0.5;
        }
        return 0.0;
    };
    for (Reservoir nu : kReservoirs)
        for (int a = 0; a < kModes; ++a)
            for (int m = -c.m_max(); m <= c.m_max(); ++m) {
                const Complex v = c.at(nu, a, m) / c.gamma(nu);
                EXPECT_LT(std::abs(v - table(nu, a, m)), 0.05)
                    << to_string(nu) << " " << to_string(static_cast<ModeLabel>(a)) << " m=" << m;
                EXPECT_NEAR(c.normalized_magnitude(nu, a, m), std::abs(v), 1e-15);
            }
}

TEST(Floquet, ParsevalDeficitIsSmall) {
    const auto& c = fig3().coupling;
    for (Reservoir nu : kReservoirs)
        for (int a = 0; a < kModes; ++a) EXPECT_LT(std::abs(c.parseval_deficit(nu, a)), 1e-6);
}

TEST(Floquet, TooFewHarmonicsFailParseval) {
    FloquetOptions o;
    o.m_max = 0;
    EXPECT_THROW(solve_floquet(kSys, kDrive, kRc, o), NumericalError);
}

TEST(Floquet, ModesAreOrthonormalAtEverySample) {
    const auto& s = fig3().solution;
    for (int k = 0; k < s.n_t; k += 17) {
        Matrix4c v;
        for (int a = 0; a < kModes; ++a) v.col(a) = s.mode(a, k);
        EXPECT_LT((v.adjoint() * v - Matrix4c::Identity()).norm(), 1e-9) << "k=" << k;
    }
}

TEST(Floquet, ModesArePeriodic) {
    // Propagating the last grid sample by one more slice must return the first.
    const auto& d = fig3();
    const auto& s = d.solution;
    const ChannelHamiltonian h(kSys, kDrive);
    const double dt = s.period() / s.n_t;
    for (int a = 0; a < kModes; ++a) {
        const Vector4c next = std::exp(Complex(0.0, s.quasienergies[a] * dt)) *
                              (evolve(h, s.time(s.n_t - 1), s.period(), d.n_steps / s.n_t) * s.mode(a, s.n_t - 1));
        EXPECT_LT((next - s.mode(a, 0)).norm(), 1e-7);
    }
}

TEST(Floquet, LabelsFollowAnalyticModes) {
    const auto& s = fig3().solution;
    for (int a = 0; a < kModes; ++a) {
        EXPECT_GT(s.label_overlap[a], 0.9);
        const Complex ov = analytic_mode_at_zero(static_cast<ModeLabel>(a)).dot(s.mode(a, 0));
        EXPECT_NEAR(ov.imag(), 0.0, 1e-12);
        EXPECT_GT(ov.real(), 0.0);
    }
    EXPECT_EQ(to_string(ModeLabel::UpPlus), "up+");
    EXPECT_EQ(to_string(ModeLabel::DownMinus), "down-");
}

TEST(Floquet, DecomposeRejectsBoundaryQuasienergy) {
    // A static propagator with an eigenvalue exactly on the folding edge.
    const double w = 2.0, eps0 = 0.0, t = 2.0 * std::numbers::pi / w;
    Matrix4c u = Matrix4c::Zero();
    const double e[4] = {0.3, -0.3, w / 2.0, 0.1};
    for (int i = 0; i < 4; ++i) u(i, i) = std::exp(Complex(0.0, -e[i] * t));
    EXPECT_THROW(floquet_decompose(u, w, eps0), NumericalError);
}
