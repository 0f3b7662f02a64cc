#include "qhp/polylog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhp/error.hpp"

namespace qhp {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// sum x^k / k^2 for |x| <= 1/2
double dilog_series(double x) {
    double term = x;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
        term *= x;
    }
    return sum;
}

} // namespace

double dilog(double x) {
    if (x > 1.0 || std::isnan(x))
        throw ValidationError("dilog: real argument must be <= 1 (got " + std::to_string(x) + ")");
    if (x == 1.0) return kPi2Over6;
    if (x == -1.0) return -0.5 * kPi2Over6;
    if (x < -1.0) {
        const double l = std::log(-x);
        return -kPi2Over6 - 0.5 * l * l - dilog(1.0 / x);
    }
    if (x < -0.5) {
        const double l = std::log1p(-x);
        return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
    }
    if (x <= 0.5) return dilog_series(x);
    return kPi2Over6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

double fermi_dirac_f1(double x) {
    if (x <= 0.0) return -dilog(-std::exp(x));
    return kPi2Over6 + 0.5 * x * x + dilog(-std::exp(-x));
}

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

} // namespace qhp
