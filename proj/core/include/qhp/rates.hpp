// Golden-rule birth/death rates between Floquet modes and residual baths

#pragma once

#include <array>
#include <vector>

#include "qhp/floquet.hpp"
#include "qhp/types.hpp"

namespace qhp {

/// Thermodynamic state of one reservoir with flat density of states above band_bottom.
struct BathState {
    double temperature{};
    double chemical_potential{};
    double dos{1.0};          ///< rho_nu
    double band_bottom{0.0};  ///< D(e) = rho Theta(e - band_bottom)

    /// Throws ValidationError unless T > 0 and rho > 0.
    void validate() const;
};

/// Fermi occupation f*(e) = 1/(exp((e - mu)/T) + 1); saturates without overflow.
double fermi_birth(double eps, const BathState& bath);
/// Hole occupation f†(e) = 1 - f*(e), evaluated without cancellation.
double fermi_death(double eps, const BathState& bath);

enum class Process : int { Birth = 0, Death = 1 };

/// R = 2 pi |C^(m)_{nu,alpha}|^2 rho_nu Theta(q + m w) f^eta(q + m w).
/// Theta is closed at the band bottom.
double golden_rule_rate(int alpha, Reservoir nu, int m, Process eta, double quasienergy, const CouplingFourier& c,
                        const BathState& bath);

class RateTable {
public:
    RateTable() = default;
    explicit RateTable(int m_max);

    int m_max() const { return m_max_; }

    double harmonic(Process eta, int alpha, Reservoir nu, int m) const { return r_[offset(eta, alpha, nu, m)]; }
    double per_reservoir(Process eta, int alpha, Reservoir nu) const {
        return per_res_[static_cast<std::size_t>((static_cast<int>(eta) * kModes + alpha) * 2) + index(nu)];
    }
    double total(Process eta, int alpha) const {
        return total_[static_cast<std::size_t>(static_cast<int>(eta) * kModes + alpha)];
    }

    void set(Process eta, int alpha, Reservoir nu, int m, double value) { r_[offset(eta, alpha, nu, m)] = value; }
    /// Recomputes per-reservoir sums and totals from the harmonic entries.
    void assemble();

private:
    std::size_t offset(Process eta, int alpha, Reservoir nu, int m) const {
        return ((static_cast<std::size_t>(static_cast<int>(eta) * kModes + alpha) * 2 + index(nu)) *
                static_cast<std::size_t>(2 * m_max_ + 1)) +
               static_cast<std::size_t>(m + m_max_);
    }

    int m_max_{0};
    std::vector<double> r_;
    std::array<double, 2 * kModes * 2> per_res_{};
    std::array<double, 2 * kModes> total_{};
};

/// Populates all modes x reservoirs x processes x harmonics in [-m_max, m_max].
RateTable build_rate_table(const FloquetSolution& solution, const CouplingFourier& c,
                           const PerReservoir<BathState>& baths, int m_max);

} // namespace qhp
