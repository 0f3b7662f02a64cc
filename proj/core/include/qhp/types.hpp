// Small vocabulary types used across the heat-pump model

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace qhp {

// Units throughout: hbar = k_B = 1, energies in units of the static tunneling J0.

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

enum class Reservoir : std::size_t { Left = 0, Right = 1 };

inline constexpr std::array<Reservoir, 2> kReservoirs{Reservoir::Left, Reservoir::Right};

constexpr std::size_t index(Reservoir r) noexcept { return static_cast<std::size_t>(r); }

constexpr std::string_view to_string(Reservoir r) noexcept {
    return r == Reservoir::Left ? "L" : "R";
}

/// One value per reservoir, indexed by Reservoir.
template <class T>
struct PerReservoir {
    std::array<T, 2> values{};

    constexpr T& operator[](Reservoir r) noexcept { return values[index(r)]; }
    constexpr const T& operator[](Reservoir r) const noexcept { return values[index(r)]; }
    constexpr T& left() noexcept { return values[0]; }
    constexpr T& right() noexcept { return values[1]; }
    constexpr const T& left() const noexcept { return values[0]; }
    constexpr const T& right() const noexcept { return values[1]; }
};

} // namespace qhp
