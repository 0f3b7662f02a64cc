// CSV emission for sweeps, trajectories, Floquet reports and steady-state summaries.
//
// Every file starts with "# " comment lines (scenario parameters, notes), then
// one header row and the data rows. Floats use 17 significant digits.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qhp/bath_dynamics.hpp"
#include "qhp/model.hpp"
#include "qhp/scenario.hpp"

namespace qhp {

/// Shortest round-trip-safe text for v with 17 significant digits.
std::string format_double(double v);

/// Columns: t_tau, T_L, mu_L, T_R, mu_R, dTR_dt (time and rate in units of tau).
std::string trajectory_csv(const Trajectory& trajectory, const std::vector<std::string>& comments = {});

/// Columns: dT, dmu, dTR_dt. Failed cells keep their row with an empty
/// dTR_dt and a comment giving the reason.
std::string sweep_csv(const SweepResult& sweep, const std::vector<std::string>& comments = {});

/// Columns: mode_label, quasienergy, then C_<nu>_m<m> = |C^(m)|/gamma_nu for
/// nu in (L, R) and m in [-m_max, m_max].
std::string floquet_report_csv(const FloquetData& data, const std::vector<std::string>& comments = {});

/// Columns: quantity, value. Occupations per mode, particle, energy and heat
/// currents per reservoir, drive power and dT/dt, dmu/dt per tau.
std::string steady_csv(const PointEvaluation& point, const FloquetData& data, const PerReservoir<BathState>& baths,
                       double time_unit, const std::vector<std::string>& comments = {});

/// Writes text to path, creating parent directories. Throws IoError naming
/// the path and the cause.
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace qhp
