#include "qhp/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qhp/error.hpp"

namespace qhp {

std::string_view to_string(ModeLabel label) {
    switch (label) {
    case ModeLabel::UpPlus: return "up+";
    case ModeLabel::UpMinus: return "up-";
    case ModeLabel::DownPlus: return "down+";
    case ModeLabel::DownMinus: return "down-";
    }
    return "?";
}

Vector4c analytic_mode_at_zero(ModeLabel label) {
    const double s = 1.0 / std::numbers::sqrt2;
    Vector4c v = Vector4c::Zero();
    switch (label) {
    case ModeLabel::UpPlus: v(kLPlus) = s; v(kRPlus) = -s; break;
    case ModeLabel::UpMinus: v(kLPlus) = s; v(kRPlus) = s; break;
    case ModeLabel::DownPlus: v(kLMinus) = s; v(kRMinus) = -s; break;
    case ModeLabel::DownMinus: v(kLMinus) = s; v(kRMinus) = s; break;
    }
    return v;
}

Matrix4c hermitian_step(const Matrix4c& h, double dt) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> eig(h);
    const auto& e = eig.eigenvalues();
    Vector4c phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -e(i) * dt);
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix4c evolve(const ChannelHamiltonian& h, double t0, double t1, int n_steps) {
    const double dt = (t1 - t0) / n_steps;
    Matrix4c u = Matrix4c::Identity();
    for (int k = 0; k < n_steps; ++k) u = hermitian_step(h.at(t0 + (k + 0.5) * dt), dt) * u;
    return u;
}

Propagator one_period_propagator(const ChannelHamiltonian& h, const PropagatorOptions& options) {
    if (options.n_steps < 100)
        throw ValidationError("one_period_propagator: n_steps must be >= 100 (got " + std::to_string(options.n_steps) + ")");
    const double period = h.period();
    int n = options.n_steps;
    Matrix4c coarse = evolve(h, 0.0, period, n);
    double diff = 0.0;
    for (int d = 0; d < options.max_doublings; ++d) {
        n *= 2;
        Matrix4c fine = evolve(h, 0.0, period, n);
        diff = (fine - coarse).cwiseAbs().maxCoeff();
        if (diff < options.tolerance) return Propagator{fine, n, diff};
        coarse = std::move(fine);
    }
    throw NumericalError("one_period_propagator: step doubling did not converge (last change " + std::to_string(diff) +
                         " at " + std::to_string(n) + " steps)");
}

double FloquetSolution::period() const { return 2.0 * std::numbers::pi / omega; }

namespace {

constexpr double kFoldGuard = 1e-9;

double fold_quasienergy(double raw, double omega, double eps0) {
    const double upper = eps0 + 0.5 * omega;
    double r = std::fmod(upper - raw, omega);
    if (r < 0.0) r += omega;
    if (r < kFoldGuard || omega - r < kFoldGuard)
        throw NumericalError("floquet_decompose: quasienergy on the folding boundary eps0 +- omega/2");
    return upper - r;
}

} // namespace

FloquetSolution floquet_decompose(const Matrix4c& u, double omega, double eps0) {
    if (!(omega > 0.0)) throw ValidationError("floquet_decompose: omega must be > 0");
    const double period = 2.0 * std::numbers::pi / omega;

    // U is normal, so its complex Schur form is diagonal and the Schur vectors
    // are an orthonormal eigenbasis even for (near-)degenerate eigenvalues.
    Eigen::ComplexSchur<Matrix4c> schur(u);
    const Matrix4c& t = schur.matrixT();
    const Matrix4c& vecs = schur.matrixU();

    std::array<double, kModes> q{};
    for (int i = 0; i < kModes; ++i) q[i] = fold_quasienergy(-std::arg(t(i, i)) / period, omega, eps0);

    // Channel membership: weight on (L+, R+) for the upper channel.
    std::array<int, kModes> up{}, down{};
    int n_up = 0, n_down = 0;
    for (int i = 0; i < kModes; ++i) {
        const double w_up = std::norm(vecs(kLPlus, i)) + std::norm(vecs(kRPlus, i));
        if (w_up > 0.5) {
            if (n_up == 2) throw NumericalError("floquet_decompose: ambiguous labeling, three modes claim the upper channel");
            up[n_up++] = i;
        } else {
            if (n_down == 2) throw NumericalError("floquet_decompose: ambiguous labeling, three modes claim the lower channel");
            down[n_down++] = i;
        }
    }

    FloquetSolution sol;
    sol.omega = omega;
    sol.eps0 = eps0;
    sol.n_t = 1;
    sol.grid.assign(kModes, Vector4c::Zero());

    auto assign_pair = [&](const std::array<int, kModes>& idx, ModeLabel plus, ModeLabel minus) {
        const Vector4c ap = analytic_mode_at_zero(plus);
        const Vector4c am = analytic_mode_at_zero(minus);
        const int a = idx[0], b = idx[1];
        auto ov = [&](const Vector4c& ref, int i) { return std::norm(ref.dot(vecs.col(i))); };
        const double straight = ov(ap, a) + ov(am, b);
        const double swapped = ov(ap, b) + ov(am, a);
        bool a_is_plus = straight > swapped;
        if (std::abs(straight - swapped) < 1e-9) a_is_plus = q[a] >= q[b];
        const int ip = a_is_plus ? a : b;
        const int im = a_is_plus ? b : a;
        for (auto [label, i] : {std::pair{plus, ip}, std::pair{minus, im}}) {
            const int alpha = static_cast<int>(label);
            const Vector4c ref = analytic_mode_at_zero(label);
            Vector4c v = vecs.col(i);
            // Gauge: make the overlap with the analytic mode real and non-negative.
            const Complex proj = ref.dot(v);
            if (std::abs(proj) > 1e-12) v *= std::conj(proj) / std::abs(proj);
            sol.grid[static_cast<std::size_t>(alpha)] = v;
            sol.quasienergies[static_cast<std::size_t>(alpha)] = q[static_cast<std::size_t>(i)];
            sol.label_overlap[static_cast<std::size_t>(alpha)] = std::norm(proj);
        }
    };
    assign_pair(up, ModeLabel::UpPlus, ModeLabel::UpMinus);
    assign_pair(down, ModeLabel::DownPlus, ModeLabel::DownMinus);
    return sol;
}

FloquetSolution propagate_modes(FloquetSolution solution, const ChannelHamiltonian& h, int n_t, int n_steps,
                                double closure_tolerance) {
    if (n_t < 1) throw ValidationError("propagate_modes: n_t must be >= 1");
    if (n_steps % n_t != 0)
        throw ValidationError("propagate_modes: n_steps must be a multiple of n_t");
    if (solution.grid.size() < static_cast<std::size_t>(kModes))
        throw ValidationError("propagate_modes: solution has no t = 0 modes");

    const double period = solution.period();
    const double dt = period / n_t;
    const int per_sample = n_steps / n_t;

    std::array<Vector4c, kModes> initial;
    for (int a = 0; a < kModes; ++a) initial[static_cast<std::size_t>(a)] = solution.mode(a, 0);

    std::vector<Vector4c> grid(static_cast<std::size_t>(kModes * n_t));
    Matrix4c u = Matrix4c::Identity();
    for (int k = 0; k <= n_t; ++k) {
        const double t = k * dt;
        for (int a = 0; a < kModes; ++a) {
            const auto ai = static_cast<std::size_t>(a);
            const Vector4c v = std::polar(1.0, solution.quasienergies[ai] * t) * (u * initial[ai]);
            if (k < n_t) {
                grid[static_cast<std::size_t>(a * n_t + k)] = v;
            } else {
                const double closure = (v - initial[ai]).cwiseAbs().maxCoeff();
                if (closure > closure_tolerance)
                    throw NumericalError("propagate_modes: periodicity closure " + std::to_string(closure) +
                                         " exceeds tolerance; increase n_steps");
            }
        }
        if (k < n_t) u = evolve(h, t, t + dt, per_sample) * u;
    }
    solution.n_t = n_t;
    solution.grid = std::move(grid);
    return solution;
}

CouplingFourier::CouplingFourier(int m_max, double omega, PerReservoir<double> gamma)
    : m_max_(m_max), omega_(omega), gamma_(gamma),
      values_(static_cast<std::size_t>(2 * kModes * (2 * m_max + 1)), Complex{}) {
    if (m_max < 0) throw ValidationError("CouplingFourier: m_max must be >= 0");
}

std::size_t CouplingFourier::offset(Reservoir nu, int alpha, int m) const {
    return (index(nu) * kModes + static_cast<std::size_t>(alpha)) * static_cast<std::size_t>(2 * m_max_ + 1) +
           static_cast<std::size_t>(m + m_max_);
}

Complex CouplingFourier::at(Reservoir nu, int alpha, int m) const {
    if (m < -m_max_ || m > m_max_) return {};
    return values_[offset(nu, alpha, m)];
}

void CouplingFourier::set(Reservoir nu, int alpha, int m, Complex value) { values_[offset(nu, alpha, m)] = value; }

double CouplingFourier::normalized_magnitude(Reservoir nu, int alpha, int m) const {
    return std::abs(at(nu, alpha, m)) / gamma_[nu];
}

double CouplingFourier::parseval_deficit(Reservoir nu, int alpha) const {
    const double total = time_average(nu, alpha);
    if (total <= 1e-14 * gamma_[nu] * gamma_[nu]) return 0.0;
    double captured = 0.0;
    for (int m = -m_max_; m <= m_max_; ++m) captured += std::norm(at(nu, alpha, m));
    return 1.0 - captured / total;
}

CouplingFourier coupling_fourier(const FloquetSolution& solution, const PerReservoir<RCParams>& rc, int m_max,
                                 double max_deficit) {
    const int n_t = solution.n_t;
    if (2 * m_max >= n_t)
        throw ValidationError("coupling_fourier: need n_t > 2 m_max samples per period (n_t = " + std::to_string(n_t) + ")");

    PerReservoir<double> gamma;
    for (Reservoir nu : kReservoirs) gamma[nu] = rc[nu].residual_coupling;
    CouplingFourier c(m_max, solution.omega, gamma);

    // <nu| in the channel basis: row of the channel transform at the RC site.
    const Matrix4c transform = channel_basis_transform();
    PerReservoir<Eigen::Matrix<Complex, 1, 4>> rc_row;
    rc_row[Reservoir::Left] = transform.row(kSiteL);
    rc_row[Reservoir::Right] = transform.row(kSiteR);

    std::vector<Complex> amp(static_cast<std::size_t>(n_t));
    for (Reservoir nu : kReservoirs) {
        for (int a = 0; a < kModes; ++a) {
            double avg = 0.0;
            for (int k = 0; k < n_t; ++k) {
                amp[static_cast<std::size_t>(k)] = gamma[nu] * (rc_row[nu] * solution.mode(a, k))(0);
                avg += std::norm(amp[static_cast<std::size_t>(k)]);
            }
            c.set_time_average(nu, a, avg / n_t);
            for (int m = -m_max; m <= m_max; ++m) {
                Complex sum{};
                for (int k = 0; k < n_t; ++k)
                    sum += std::polar(1.0, 2.0 * std::numbers::pi * m * k / n_t) * amp[static_cast<std::size_t>(k)];
                c.set(nu, a, m, sum / static_cast<double>(n_t));
            }
            const double deficit = c.parseval_deficit(nu, a);
            if (deficit > max_deficit)
                throw NumericalError("coupling_fourier: Parseval deficit " + std::to_string(deficit) + " for reservoir " +
                                     std::string(to_string(nu)) + ", mode " +
                                     std::string(to_string(static_cast<ModeLabel>(a))) + "; increase m_max");
        }
    }
    return c;
}

FloquetData solve_floquet(const SystemParams& sys, const DriveParams& drive, const PerReservoir<RCParams>& rc,
                          const FloquetOptions& options) {
    const ChannelHamiltonian h(sys, drive);
    PropagatorOptions prop = options.propagator;
    // Keep every step count a multiple of n_t so the mode grid reuses the same steps.
    if (prop.n_steps % options.n_t != 0) prop.n_steps = (prop.n_steps / options.n_t + 1) * options.n_t;
    const Propagator p = one_period_propagator(h, prop);

    FloquetData data;
    data.n_steps = p.n_steps;
    data.propagator_convergence = p.convergence;
    data.solution = propagate_modes(floquet_decompose(p.unitary, drive.omega, sys.eps0), h, options.n_t, p.n_steps);
    data.coupling = coupling_fourier(data.solution, rc, options.m_max, options.max_parseval_deficit);
    return data;
}

} // namespace qhp
