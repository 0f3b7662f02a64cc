// One-period propagator, Floquet modes and their RC Fourier couplings

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "qhp/channel_hamiltonian.hpp"
#include "qhp/rcmap.hpp"
#include "qhp/types.hpp"

namespace qhp {

/// Channel tags of the four Floquet modes, in the order used for mode indices.
enum class ModeLabel : int { UpPlus = 0, UpMinus = 1, DownPlus = 2, DownMinus = 3 };

inline constexpr int kModes = 4;

std::string_view to_string(ModeLabel label);

/// High-frequency resonant Floquet mode at t = 0 in the channel basis:
/// up+- = (|L+> -+ |R+>)/sqrt2, down+- = (|L-> -+ |R->)/sqrt2.
Vector4c analytic_mode_at_zero(ModeLabel label);

struct PropagatorOptions {
    int n_steps{2048};       ///< initial number of midpoint steps per period (>= 100)
    double tolerance{1e-8};  ///< max element change between successive doublings
    int max_doublings{8};
};

struct Propagator {
    Matrix4c unitary;
    int n_steps{};           ///< step count of the returned (finer) propagator
    double convergence{};    ///< max element difference to the half-step-count result
};

/// exp(-i H dt) for Hermitian H (exactly unitary up to rounding).
Matrix4c hermitian_step(const Matrix4c& h, double dt);

/// Time-ordered product of midpoint-sampled step exponentials over [t0, t1].
Matrix4c evolve(const ChannelHamiltonian& h, double t0, double t1, int n_steps);

/// U(T, 0), doubling the step count from options.n_steps until two successive
/// results agree within options.tolerance. Throws NumericalError otherwise.
Propagator one_period_propagator(const ChannelHamiltonian& h, const PropagatorOptions& options = {});

struct FloquetSolution {
    double omega{};
    double eps0{};
    /// Quasienergies per mode index, folded into (eps0 - omega/2, eps0 + omega/2].
    std::array<double, kModes> quasienergies{};
    /// |<analytic mode|numeric mode>|^2 at t = 0 for the assigned label.
    std::array<double, kModes> label_overlap{};
    int n_t{1};
    /// Mode amplitudes in the channel basis, mode-major: grid[alpha * n_t + k].
    std::vector<Vector4c> grid;

    double period() const;
    double time(int k) const { return period() * k / n_t; }
    const Vector4c& mode(int alpha, int k) const { return grid[static_cast<std::size_t>(alpha * n_t + k)]; }
};

/// Eigen-decomposition of the one-period propagator. Mode index alpha equals
/// the ModeLabel assigned by overlap with the analytic modes; only t = 0 is
/// populated (n_t = 1). Throws NumericalError on an ambiguous channel
/// assignment or a quasienergy on the folding boundary.
FloquetSolution floquet_decompose(const Matrix4c& u, double omega, double eps0);

/// Samples |u_alpha(t)> = exp(i q t) U(t, 0)|u_alpha(0)> on n_t uniform times
/// in [0, T). n_steps must be a multiple of n_t. Throws NumericalError when the
/// periodicity closure |u(T) - u(0)| exceeds closure_tolerance.
FloquetSolution propagate_modes(FloquetSolution solution, const ChannelHamiltonian& h, int n_t, int n_steps,
                                double closure_tolerance = 1e-8);

/// Fourier components C^(m)_{nu,alpha} = (1/T) int dt e^{i m w t} gamma_nu <nu|u_alpha(t)>.
class CouplingFourier {
public:
    CouplingFourier() = default;
    CouplingFourier(int m_max, double omega, PerReservoir<double> gamma);

    int m_max() const { return m_max_; }
    double omega() const { return omega_; }
    double gamma(Reservoir nu) const { return gamma_[nu]; }

    /// Zero outside [-m_max, m_max].
    Complex at(Reservoir nu, int alpha, int m) const;
    void set(Reservoir nu, int alpha, int m, Complex value);

    /// |C^(m)| / gamma_nu
    double normalized_magnitude(Reservoir nu, int alpha, int m) const;

    /// Time average of |gamma_nu <nu|u_alpha(t)>|^2 over the sampled grid.
    double time_average(Reservoir nu, int alpha) const { return average_[nu][static_cast<std::size_t>(alpha)]; }
    void set_time_average(Reservoir nu, int alpha, double value) { average_[nu][static_cast<std::size_t>(alpha)] = value; }

    /// 1 - sum_m |C^(m)|^2 / time_average (0 when the mode does not reach nu).
    double parseval_deficit(Reservoir nu, int alpha) const;

private:
    std::size_t offset(Reservoir nu, int alpha, int m) const;

    int m_max_{0};
    double omega_{};
    PerReservoir<double> gamma_{};
    std::vector<Complex> values_;
    PerReservoir<std::array<double, kModes>> average_{};
};

/// Throws NumericalError if any Parseval deficit exceeds max_deficit.
CouplingFourier coupling_fourier(const FloquetSolution& solution, const PerReservoir<RCParams>& rc, int m_max,
                                 double max_deficit = 1e-4);

struct FloquetOptions {
    PropagatorOptions propagator{};
    int n_t{256};
    int m_max{5};
    double max_parseval_deficit{1e-4};
};

/// Everything the rate equations need from the closed system; independent of bath state.
struct FloquetData {
    FloquetSolution solution;
    CouplingFourier coupling;
    int n_steps{};
    double propagator_convergence{};
};

FloquetData solve_floquet(const SystemParams& sys, const DriveParams& drive, const PerReservoir<RCParams>& rc,
                          const FloquetOptions& options = {});

} // namespace qhp
