// Scenario configuration, presets, heatmap sweeps and trajectory families

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhp/bath_dynamics.hpp"
#include "qhp/model.hpp"
#include "qhp/rcmap.hpp"

namespace qhp {

enum class RunMode { Steady, Evolve, Sweep, FloquetReport };

std::string_view to_string(RunMode mode);

/// One reservoir as written in a scenario file. Exactly one of gamma_big or
/// lambda fixes the RC coupling; the left one may be omitted when the drive
/// specifies Delta (then lambda_L = lambda_R + Delta).
struct BathConfig {
    std::optional<double> gamma_big;
    std::optional<double> lambda;
    double eta{};
    std::optional<double> center;  ///< defaults to eps0
    double rho{1.0};
    double temperature{};
    double chemical_potential{};
    double band_bottom{0.0};
};

struct DriveConfig {
    double j0{1.0};
    double j1{0.0};
    std::optional<double> delta;
    std::optional<double> channel_offset;  ///< "Delta" = lambda_L - lambda_R = omega + delta
    std::optional<double> omega;
};

struct NumericsConfig {
    int n_steps{2048};
    int n_t{256};
    int m_max{5};
    double dt{1.0};
    double t_end{1000.0};
    double sample_interval{10.0};
};

struct SweepGrid {
    double dT_min{};
    double dT_max{};
    int dT_n{1};
    double dmu_min{};
    double dmu_max{};
    int dmu_n{1};

    std::vector<double> dT_values() const;
    std::vector<double> dmu_values() const;
    void validate() const;
};

/// Parses "dTmin:dTmax:n,dmumin:dmumax:n".
SweepGrid parse_grid(std::string_view text);

/// Parameter varied across a trajectory family.
struct FamilyConfig {
    std::string parameter;  ///< "Delta", "j1", "delta" or "delta_over_j1"
    std::vector<double> values;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    std::string caption;  ///< parameter values quoted by the source figure
    std::string source;   ///< file the config was loaded from
    double eps0{};
    std::optional<double> eps_a;
    std::optional<double> eps_b;
    DriveConfig drive_input;
    PerReservoir<BathConfig> baths;
    NumericsConfig numerics;
    RunMode mode{RunMode::Steady};
    std::optional<SweepGrid> sweep;
    std::optional<FamilyConfig> family;

    // Filled by resolve().
    PerReservoir<LorentzianBathSpec> spectra{};
    PerReservoir<RCParams> rc{};
    SystemParams system{};
    DriveParams drive{};

    PerReservoir<BathState> initial_baths() const;
    FloquetOptions floquet_options() const;
    TrajectoryConfig trajectory_config() const;
    /// "key = value" lines with every resolved parameter, for CSV header blocks.
    std::vector<std::string> describe() const;
};

/// Validates a parsed config and derives RC parameters, lambda_L when implied by
/// Delta, and omega = Delta - delta. Throws ValidationError naming the
/// offending field or violated invariant.
ScenarioConfig resolve(ScenarioConfig config);

/// Parses JSON text; schema violations raise ValidationError with the field path.
ScenarioConfig parse_config(std::string_view json_text, std::string_view origin = "<memory>");

/// Reads, parses and resolves a scenario file.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Copy of config with the family parameter set to value, re-resolved.
ScenarioConfig with_family_value(const ScenarioConfig& config, double value);

/// All members of the config's family, or {config} without a family.
std::vector<ScenarioConfig> expand_family(const ScenarioConfig& config);

HeatPumpModel build_model(const ScenarioConfig& config);

struct SweepCell {
    double dT{};
    double dmu{};
    std::optional<double> right_temperature_rate;  ///< dT_R/dt per tau at t = 0
    std::string failure;
};

struct SweepResult {
    SweepGrid grid;
    std::vector<SweepCell> cells;  ///< dT-major, then dmu
};

/// Evaluates dT_R/dt with the left bath fixed at its configured state and the
/// right bath at (T_L + dT, mu_L + dmu). Output order is independent of threads.
SweepResult run_sweep(const ScenarioConfig& config, const SweepGrid& grid, unsigned threads);
SweepResult run_sweep(const HeatPumpModel& model, const ScenarioConfig& config, const SweepGrid& grid,
                      unsigned threads);

struct FamilyRun {
    ScenarioConfig config;
    Trajectory trajectory;
};

/// Integrates every family member concurrently.
std::vector<FamilyRun> run_family(const ScenarioConfig& config, unsigned threads);

} // namespace qhp
