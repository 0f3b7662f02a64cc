// Reaction-coordinate mapping of structured fermionic baths
//
// A bath coupled to a dot through a spectral density J(w) is replaced by one
// collective mode (the reaction coordinate, RC) of energy rc_energy, coupled to
// the dot with strength lambda, plus a residual bath. For a Lorentzian J the
// residual bath is flat with coupling gamma = 2 eta.

#pragma once

#include <functional>
#include <vector>

namespace qhp {

/// Lorentzian spectral density J(w) = gamma_big eta^2 / ((w - center)^2 + eta^2).
struct LorentzianBathSpec {
    double gamma_big{};  ///< peak value (coupling strength)
    double eta{};        ///< half width
    double center{};     ///< peak position

    /// Throws ValidationError unless gamma_big > 0 and eta > 0.
    void validate() const;
};

struct RCParams {
    double lambda{};             ///< dot-RC coupling
    double rc_energy{};          ///< RC on-site energy
    double residual_coupling{};  ///< flat residual spectral density gamma
};

/// Zeroth and first moments of a generic spectral density.
struct RCMoments {
    double lambda{};
    double rc_energy{};
};

struct GenericSpectralDensity {
    std::function<double(double)> evaluator;
    double omega_min{};
    double omega_max{};
    /// Interior points where the integrand is sharply peaked; the integration
    /// interval is split there.
    std::vector<double> breakpoints;
};

struct QuadratureOptions {
    /// Error budget per unit of support, relative to the scale of J (peak or mean value).
    double relative_to_scale{1e-10};
    unsigned max_depth{15};
};

double lorentzian_value(double omega, const LorentzianBathSpec& spec);

RCParams rc_map_lorentzian(const LorentzianBathSpec& spec);

/// lambda^2 = (1/2pi) int J, rc_energy = (1/(2pi lambda^2)) int w J, by adaptive
/// Gauss-Kronrod quadrature over the support. Throws NumericalError when the
/// zeroth moment is not positive or the quadrature misses its tolerance.
RCMoments rc_map_numeric(const GenericSpectralDensity& density, const QuadratureOptions& options = {});

/// The Lorentzian truncated to center +- half_window_in_widths * eta.
GenericSpectralDensity truncated_lorentzian(const LorentzianBathSpec& spec, double half_window_in_widths = 1e4);

} // namespace qhp
