#include "qhp/channel_hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhp/error.hpp"

namespace qhp {

void DriveParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ValidationError("drive: angular frequency omega must be > 0 (got " + std::to_string(omega) + ")");
    if (!(j1 >= 0.0) || !std::isfinite(j1))
        throw ValidationError("drive: amplitude J1 must be >= 0 (got " + std::to_string(j1) + ")");
    if (!std::isfinite(j0) || !std::isfinite(delta))
        throw ValidationError("drive: J0 and delta must be finite");
}

double DriveParams::tunneling(double t) const { return j0 + j1 * std::cos(omega * t); }

double DriveParams::period() const { return 2.0 * std::numbers::pi / omega; }

void SystemParams::validate(bool require_pump) const {
    if (!std::isfinite(eps0))
        throw ValidationError("system: eps0 must be finite");
    if (!(lambda_right > 0.0) || !(lambda_left > 0.0))
        throw ValidationError("system: RC couplings must satisfy lambda_L > 0 and lambda_R > 0");
    if (require_pump && !(lambda_left > lambda_right))
        throw ValidationError("system: heat-pump operation requires lambda_L > lambda_R (got lambda_L = " +
                              std::to_string(lambda_left) + ", lambda_R = " + std::to_string(lambda_right) + ")");
}

Matrix4c channel_basis_transform() {
    const double s = 1.0 / std::numbers::sqrt2;
    Matrix4c u = Matrix4c::Zero();
    u(kSiteL, kLPlus) = s;
    u(kSiteA, kLPlus) = s;
    u(kSiteL, kLMinus) = -s;
    u(kSiteA, kLMinus) = s;
    u(kSiteR, kRPlus) = s;
    u(kSiteB, kRPlus) = s;
    u(kSiteR, kRMinus) = -s;
    u(kSiteB, kRMinus) = s;
    return u;
}

Matrix4c site_hamiltonian(double t, const SystemParams& sys, const DriveParams& drive) {
    const double j = drive.tunneling(t);
    Matrix4c h = Matrix4c::Identity() * sys.eps0;
    h(kSiteL, kSiteA) = h(kSiteA, kSiteL) = sys.lambda_left;
    h(kSiteR, kSiteB) = h(kSiteB, kSiteR) = sys.lambda_right;
    h(kSiteA, kSiteB) = h(kSiteB, kSiteA) = -j;
    return h;
}

Matrix4c lab_hamiltonian(double t, const SystemParams& sys, const DriveParams& drive) {
    const double half_j = 0.5 * drive.tunneling(t);
    Matrix4c h = Matrix4c::Identity() * sys.eps0;
    h(kLPlus, kLPlus) += sys.lambda_left;
    h(kLMinus, kLMinus) -= sys.lambda_left;
    h(kRPlus, kRPlus) += sys.lambda_right;
    h(kRMinus, kRMinus) -= sys.lambda_right;
    for (int l : {kLPlus, kLMinus})
        for (int r : {kRPlus, kRMinus}) h(l, r) = h(r, l) = -half_j;
    return h;
}

Matrix4c rwa_effective_hamiltonian(const SystemParams& sys, const DriveParams& drive) {
    if (drive.delta != 0.0)
        throw ValidationError("rwa_effective_hamiltonian: only defined for resonant drive (delta = 0)");
    const double coupling = -0.25 * drive.j1;
    Matrix4c h = Matrix4c::Zero();
    h(kLPlus, kLPlus) = h(kRPlus, kRPlus) = sys.eps0 + sys.lambda_right;
    h(kLMinus, kLMinus) = h(kRMinus, kRMinus) = sys.eps0 - sys.lambda_right;
    h(kLPlus, kRPlus) = h(kRPlus, kLPlus) = coupling;
    h(kLMinus, kRMinus) = h(kRMinus, kLMinus) = coupling;
    return h;
}

ChannelHamiltonian::ChannelHamiltonian(SystemParams sys, DriveParams drive)
    : sys_(sys), drive_(drive) {
    sys_.validate(false);
    drive_.validate();
}

} // namespace qhp
