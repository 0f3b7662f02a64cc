// The driven four-level extended system
//
// Site basis:    (|L>, |a>, |b>, |R>)   RC left, dot a, dot b, RC right.
// Channel basis: (|L+>, |L->, |R+>, |R->) symmetric/antisymmetric dot-RC hybrids.
//
// The channel states are |L+> = (|L> + |a>)/sqrt2 and |L-> = (|a> - |L>)/sqrt2
// (likewise for R with dot b). The overall sign on |L-> and |R-> makes every
// L<->R tunneling element equal to -J(t)/2, and the RC amplitudes of the
// high-frequency Floquet modes carry the signs of the analytic coupling table
// (C_L,up = +1/2 at m = 1, C_L,down = -1/2 at m = -1, ...).

#pragma once

#include "qhp/types.hpp"

namespace qhp {

struct DriveParams {
    double j0{1.0};     ///< static tunneling J0
    double j1{0.0};     ///< drive amplitude J1
    double omega{};     ///< angular frequency
    double delta{0.0};  ///< detuning, Delta = omega + delta

    void validate() const;
    double tunneling(double t) const;  ///< J(t) = J0 + J1 cos(omega t)
    double period() const;
};

struct SystemParams {
    double eps0{};          ///< common dot / RC on-site energy
    double lambda_left{};   ///< RC coupling on the left
    double lambda_right{};  ///< RC coupling on the right

    /// Throws ValidationError unless both couplings are positive; with
    /// require_pump also lambda_left > lambda_right.
    void validate(bool require_pump = true) const;
    /// Offset between the left and right channel levels, lambda_L - lambda_R.
    double channel_offset() const { return lambda_left - lambda_right; }
};

enum SiteIndex : int { kSiteL = 0, kSiteA = 1, kSiteB = 2, kSiteR = 3 };
enum ChannelIndex : int { kLPlus = 0, kLMinus = 1, kRPlus = 2, kRMinus = 3 };

/// Columns are the channel states expressed in the site basis.
Matrix4c channel_basis_transform();

/// Site-basis Hamiltonian at time t.
Matrix4c site_hamiltonian(double t, const SystemParams& sys, const DriveParams& drive);

/// Channel-basis Hamiltonian at time t: eps0 I + M/2 with M = diag(2lL, -2lL, 2lR, -2lR)
/// and every L<->R element equal to -J(t)/2.
Matrix4c lab_hamiltonian(double t, const SystemParams& sys, const DriveParams& drive);

/// Rotating-wave effective Hamiltonian for resonant drive (delta = 0), in the
/// rotating channel basis. Blocks (L+, R+) and (L-, R-) have diagonal
/// eps0 +- lambda_R and off-diagonal -J1/4. Throws ValidationError if delta != 0.
Matrix4c rwa_effective_hamiltonian(const SystemParams& sys, const DriveParams& drive);

/// Time-periodic channel Hamiltonian.
class ChannelHamiltonian {
public:
    ChannelHamiltonian(SystemParams sys, DriveParams drive);

    Matrix4c at(double t) const { return lab_hamiltonian(t, sys_, drive_); }
    double period() const { return drive_.period(); }
    double omega() const { return drive_.omega; }
    const SystemParams& system() const { return sys_; }
    const DriveParams& drive() const { return drive_; }

private:
    SystemParams sys_;
    DriveParams drive_;
};

} // namespace qhp
