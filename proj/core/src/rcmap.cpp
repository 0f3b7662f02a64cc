#include "qhp/rcmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qhp/error.hpp"

namespace qhp {

void LorentzianBathSpec::validate() const {
    if (!(gamma_big > 0.0) || !std::isfinite(gamma_big))
        throw ValidationError("Lorentzian bath: coupling strength Gamma must be > 0 (got " + std::to_string(gamma_big) + ")");
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw ValidationError("Lorentzian bath: width eta must be > 0 (got " + std::to_string(eta) + ")");
    if (!std::isfinite(center))
        throw ValidationError("Lorentzian bath: center must be finite");
}

double lorentzian_value(double omega, const LorentzianBathSpec& spec) {
    const double d = omega - spec.center;
    const double eta2 = spec.eta * spec.eta;
    return spec.gamma_big * eta2 / (d * d + eta2);
}

RCParams rc_map_lorentzian(const LorentzianBathSpec& spec) {
    spec.validate();
    return RCParams{
        .lambda = std::sqrt(0.5 * spec.gamma_big * spec.eta),
        .rc_energy = spec.center,
        .residual_coupling = 2.0 * spec.eta,
    };
}

namespace {

struct Integral {
    double value{};
    double error{};
};

constexpr double kPieceTolerance = 1e-12;

// Gauss-Kronrod per panel; panels with endpoint singularities (band edges)
// fall back to tanh-sinh, which is built for them.
template <class F>
Integral integrate_pieces(F&& f, const std::vector<double>& nodes, unsigned max_depth) {
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    Integral total;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double err = 0.0, l1 = 0.0;
        double v = Quad::integrate(f, nodes[i], nodes[i + 1], max_depth, kPieceTolerance, &err, &l1);
        if (err > kPieceTolerance * l1) {
            boost::math::quadrature::tanh_sinh<double> ts;
            double ts_err = 0.0;
            const double w = ts.integrate(f, nodes[i], nodes[i + 1], kPieceTolerance, &ts_err);
            if (ts_err * std::max(std::abs(w), 1e-300) < err) {
                v = w;
                err = ts_err * std::max(std::abs(w), 1e-300);
            }
        }
        total.value += v;
        total.error += err;
    }
    return total;
}

} // namespace

RCMoments rc_map_numeric(const GenericSpectralDensity& density, const QuadratureOptions& options) {
    if (!density.evaluator)
        throw ValidationError("spectral density has no evaluator");
    if (!(density.omega_max > density.omega_min))
        throw ValidationError("spectral density support must satisfy omega_min < omega_max");

    std::vector<double> nodes{density.omega_min};
    for (double b : density.breakpoints)
        if (b > density.omega_min && b < density.omega_max) nodes.push_back(b);
    nodes.push_back(density.omega_max);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const auto& J = density.evaluator;
    const Integral zeroth = integrate_pieces([&](double w) { return J(w); }, nodes, options.max_depth);
    const Integral first = integrate_pieces([&](double w) { return w * J(w); }, nodes, options.max_depth);

    if (!(zeroth.value > 0.0))
        throw NumericalError("degenerate bath: integral of the spectral density is not positive");
    // Scale of J: the larger of its sampled peak and its mean over the support.
    const double width = density.omega_max - density.omega_min;
    double scale = zeroth.value / width;
    for (double x : nodes) scale = std::max(scale, std::abs(J(x)));
    if (zeroth.error > options.relative_to_scale * scale * width)
        throw NumericalError("rc_map_numeric: quadrature did not reach the requested tolerance");

    const double lambda2 = zeroth.value / (2.0 * std::numbers::pi);
    return RCMoments{
        .lambda = std::sqrt(lambda2),
        .rc_energy = first.value / zeroth.value,
    };
}

GenericSpectralDensity truncated_lorentzian(const LorentzianBathSpec& spec, double half_window_in_widths) {
    spec.validate();
    const double half = half_window_in_widths * spec.eta;
    GenericSpectralDensity d;
    d.evaluator = [spec](double w) { return lorentzian_value(w, spec); };
    d.omega_min = spec.center - half;
    d.omega_max = spec.center + half;
    // Geometric ladder of breakpoints so each panel sees a comparable variation.
    for (double k = 1.0; k < half_window_in_widths; k *= 4.0) {
        d.breakpoints.push_back(spec.center - k * spec.eta);
        d.breakpoints.push_back(spec.center + k * spec.eta);
    }
    d.breakpoints.push_back(spec.center);
    return d;
}

} // namespace qhp
