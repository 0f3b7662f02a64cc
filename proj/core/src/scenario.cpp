#include "qhp/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qhp/error.hpp"
#include "qhp/parallel.hpp"

namespace qhp {

using nlohmann::json;

std::string_view to_string(RunMode mode) {
    switch (mode) {
    case RunMode::Steady: return "steady";
    case RunMode::Evolve: return "evolve";
    case RunMode::Sweep: return "sweep";
    case RunMode::FloquetReport: return "floquet-report";
    }
    return "?";
}

namespace {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            schema_error(path.empty() ? key : path + "." + key, "unknown field");
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::optional<double> opt_number(const json& j, const std::string& path, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) schema_error(join(path, key), "expected a number");
    return it->get<double>();
}

double req_number(const json& j, const std::string& path, std::string_view key) {
    auto v = opt_number(j, path, key);
    if (!v) schema_error(join(path, key), "required number is missing");
    return *v;
}

std::optional<int> opt_int(const json& j, const std::string& path, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer()) schema_error(join(path, key), "expected an integer");
    return it->get<int>();
}

std::optional<std::string> opt_string(const json& j, const std::string& path, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) schema_error(join(path, key), "expected a string");
    return it->get<std::string>();
}

BathConfig parse_bath(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"gamma_big", "lambda", "eta", "center", "rho", "T", "mu", "band_bottom"});
    BathConfig b;
    b.gamma_big = opt_number(j, path, "gamma_big");
    b.lambda = opt_number(j, path, "lambda");
    b.eta = req_number(j, path, "eta");
    b.center = opt_number(j, path, "center");
    b.rho = opt_number(j, path, "rho").value_or(1.0);
    b.temperature = req_number(j, path, "T");
    b.chemical_potential = req_number(j, path, "mu");
    b.band_bottom = opt_number(j, path, "band_bottom").value_or(0.0);
    return b;
}

SweepGrid parse_sweep(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"dT", "dmu"});
    auto axis = [&](std::string_view key, double& lo, double& hi, int& n) {
        const std::string p = join(path, key);
        auto it = j.find(key);
        if (it == j.end()) schema_error(p, "required axis is missing");
        require_object(*it, p);
        check_keys(*it, p, {"min", "max", "n"});
        lo = req_number(*it, p, "min");
        hi = req_number(*it, p, "max");
        auto count = opt_int(*it, p, "n");
        if (!count) schema_error(join(p, "n"), "required integer is missing");
        n = *count;
    };
    SweepGrid g;
    axis("dT", g.dT_min, g.dT_max, g.dT_n);
    axis("dmu", g.dmu_min, g.dmu_max, g.dmu_n);
    g.validate();
    return g;
}

RunMode parse_mode(const std::string& s, const std::string& path) {
    for (RunMode m : {RunMode::Steady, RunMode::Evolve, RunMode::Sweep, RunMode::FloquetReport})
        if (s == to_string(m)) return m;
    schema_error(path, "unknown mode '" + s + "' (expected steady, evolve, sweep or floquet-report)");
}

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace

std::vector<double> SweepGrid::dT_values() const { return linspace(dT_min, dT_max, dT_n); }
std::vector<double> SweepGrid::dmu_values() const { return linspace(dmu_min, dmu_max, dmu_n); }

void SweepGrid::validate() const {
    if (dT_n < 1 || dmu_n < 1) throw ValidationError("sweep: grid counts must be >= 1");
    if (!std::isfinite(dT_min) || !std::isfinite(dT_max) || !std::isfinite(dmu_min) || !std::isfinite(dmu_max))
        throw ValidationError("sweep: grid bounds must be finite");
    if (dT_max < dT_min || dmu_max < dmu_min) throw ValidationError("sweep: grid bounds must satisfy min <= max");
}

SweepGrid parse_grid(std::string_view text) {
    auto parse_axis = [](std::string_view axis, double& lo, double& hi, int& n) {
        std::array<std::string_view, 3> parts;
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            const std::size_t colon = axis.find(':', start);
            if ((i < 2) == (colon == std::string_view::npos))
                throw ValidationError("--grid: each axis must read min:max:n (got '" + std::string(axis) + "')");
            parts[static_cast<std::size_t>(i)] = axis.substr(start, i < 2 ? colon - start : std::string_view::npos);
            start = colon + 1;
        }
        auto num = [&](std::string_view s, auto& out) {
            const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw ValidationError("--grid: cannot parse '" + std::string(s) + "'");
        };
        num(parts[0], lo);
        num(parts[1], hi);
        num(parts[2], n);
    };
    const std::size_t comma = text.find(',');
    if (comma == std::string_view::npos)
        throw ValidationError("--grid: expected \"dTmin:dTmax:n,dmumin:dmumax:n\"");
    SweepGrid g;
    parse_axis(text.substr(0, comma), g.dT_min, g.dT_max, g.dT_n);
    parse_axis(text.substr(comma + 1), g.dmu_min, g.dmu_max, g.dmu_n);
    g.validate();
    return g;
}

ScenarioConfig parse_config(std::string_view json_text, std::string_view origin) {
    json j;
    try {
        j = json::parse(json_text.begin(), json_text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(origin) + ": JSON parse error: " + e.what());
    }
    require_object(j, "<root>");
    check_keys(j, "", {"name", "description", "caption", "mode", "system", "drive", "baths", "numerics", "sweep", "family"});

    ScenarioConfig c;
    c.source = std::string(origin);
    c.name = opt_string(j, "", "name").value_or("scenario");
    c.description = opt_string(j, "", "description").value_or("");
    c.caption = opt_string(j, "", "caption").value_or("");
    c.mode = parse_mode(opt_string(j, "", "mode").value_or("steady"), "mode");

    if (!j.contains("system")) schema_error("system", "required object is missing");
    const json& sys = j["system"];
    require_object(sys, "system");
    check_keys(sys, "system", {"eps0", "eps_a", "eps_b"});
    c.eps0 = req_number(sys, "system", "eps0");
    c.eps_a = opt_number(sys, "system", "eps_a");
    c.eps_b = opt_number(sys, "system", "eps_b");

    if (!j.contains("drive")) schema_error("drive", "required object is missing");
    const json& dr = j["drive"];
    require_object(dr, "drive");
    check_keys(dr, "drive", {"j0", "j1", "omega", "Delta", "delta"});
    c.drive_input.j0 = opt_number(dr, "drive", "j0").value_or(1.0);
    c.drive_input.j1 = opt_number(dr, "drive", "j1").value_or(0.0);
    c.drive_input.omega = opt_number(dr, "drive", "omega");
    c.drive_input.channel_offset = opt_number(dr, "drive", "Delta");
    c.drive_input.delta = opt_number(dr, "drive", "delta");

    if (!j.contains("baths")) schema_error("baths", "required object is missing");
    const json& baths = j["baths"];
    require_object(baths, "baths");
    check_keys(baths, "baths", {"L", "R"});
    for (Reservoir nu : kReservoirs) {
        const std::string key(to_string(nu));
        if (!baths.contains(key)) schema_error("baths." + key, "required object is missing");
        c.baths[nu] = parse_bath(baths[key], "baths." + key);
    }

    if (j.contains("numerics")) {
        const json& nj = j["numerics"];
        require_object(nj, "numerics");
        check_keys(nj, "numerics", {"n_steps", "n_t", "m_max", "dt", "t_end", "sample_interval"});
        auto& n = c.numerics;
        n.n_steps = opt_int(nj, "numerics", "n_steps").value_or(n.n_steps);
        n.n_t = opt_int(nj, "numerics", "n_t").value_or(n.n_t);
        n.m_max = opt_int(nj, "numerics", "m_max").value_or(n.m_max);
        n.dt = opt_number(nj, "numerics", "dt").value_or(n.dt);
        n.t_end = opt_number(nj, "numerics", "t_end").value_or(n.t_end);
        n.sample_interval = opt_number(nj, "numerics", "sample_interval").value_or(n.sample_interval);
    }

    if (j.contains("sweep")) c.sweep = parse_sweep(j["sweep"], "sweep");

    if (j.contains("family")) {
        const json& fj = j["family"];
        require_object(fj, "family");
        check_keys(fj, "family", {"parameter", "values"});
        FamilyConfig f;
        f.parameter = opt_string(fj, "family", "parameter").value_or("");
        if (f.parameter != "Delta" && f.parameter != "j1" && f.parameter != "delta" && f.parameter != "delta_over_j1")
            schema_error("family.parameter", "expected one of Delta, j1, delta, delta_over_j1");
        auto it = fj.find("values");
        if (it == fj.end() || !it->is_array() || it->empty())
            schema_error("family.values", "expected a non-empty array of numbers");
        for (const auto& v : *it) {
            if (!v.is_number()) schema_error("family.values", "expected a non-empty array of numbers");
            f.values.push_back(v.get<double>());
        }
        c.family = std::move(f);
    }
    return resolve(std::move(c));
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path.string() + ": cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

ScenarioConfig resolve(ScenarioConfig c) {
    if (!std::isfinite(c.eps0)) throw ValidationError("system.eps0: must be finite");
    auto check_symmetric = [&](const std::optional<double>& v, const std::string& field) {
        if (v && !nearly_equal(*v, c.eps0))
            throw ValidationError(field + ": only the symmetric configuration with every dot and RC energy equal to eps0 is supported");
    };
    check_symmetric(c.eps_a, "system.eps_a");
    check_symmetric(c.eps_b, "system.eps_b");

    // Right coupling first; the left one may follow from Delta.
    PerReservoir<std::optional<double>> lambda;
    for (Reservoir nu : kReservoirs) {
        const BathConfig& b = c.baths[nu];
        const std::string path = "baths." + std::string(to_string(nu));
        check_symmetric(b.center, path + ".center");
        if (!(b.eta > 0.0)) throw ValidationError(path + ".eta: width must be > 0");
        if (b.gamma_big && b.lambda) throw ValidationError(path + ": give either gamma_big or lambda, not both");
        if (b.gamma_big) {
            if (!(*b.gamma_big > 0.0)) throw ValidationError(path + ".gamma_big: must be > 0");
            lambda[nu] = std::sqrt(0.5 * *b.gamma_big * b.eta);
        } else if (b.lambda) {
            if (!(*b.lambda > 0.0)) throw ValidationError(path + ".lambda: must be > 0");
            lambda[nu] = *b.lambda;
        }
        if (!(b.temperature > 0.0)) throw ValidationError(path + ".T: temperature must be > 0 (invariant T > 0)");
        if (!(b.rho > 0.0)) throw ValidationError(path + ".rho: density of states must be > 0");
    }
    if (!lambda.right()) throw ValidationError("baths.R: one of gamma_big or lambda is required");

    const auto& d = c.drive_input;
    if (!lambda.left()) {
        if (!d.channel_offset)
            throw ValidationError("baths.L: one of gamma_big or lambda is required (or drive.Delta to derive it)");
        lambda.left() = *lambda.right() + *d.channel_offset;
    }

    for (Reservoir nu : kReservoirs) {
        const BathConfig& b = c.baths[nu];
        const double gamma_big = b.gamma_big.value_or(2.0 * *lambda[nu] * *lambda[nu] / b.eta);
        c.spectra[nu] = LorentzianBathSpec{gamma_big, b.eta, c.eps0};
        c.rc[nu] = rc_map_lorentzian(c.spectra[nu]);
    }

    c.system = SystemParams{c.eps0, c.rc.left().lambda, c.rc.right().lambda};
    if (!(c.system.lambda_left > c.system.lambda_right))
        throw ValidationError("invariant lambda_L > lambda_R violated (lambda_L = " + fmt(c.system.lambda_left) +
                              ", lambda_R = " + fmt(c.system.lambda_right) + "); the right bath must couple more weakly");
    const double offset = c.system.channel_offset();
    if (d.channel_offset && std::abs(*d.channel_offset - offset) > 1e-6 * std::max(1.0, std::abs(offset)))
        throw ValidationError("drive.Delta = " + fmt(*d.channel_offset) + " disagrees with lambda_L - lambda_R = " + fmt(offset));

    double omega = 0.0;
    double delta = 0.0;
    if (d.omega) {
        omega = *d.omega;
        delta = offset - omega;
        if (d.delta && std::abs(*d.delta - delta) > 1e-6)
            throw ValidationError("drive: omega and delta violate Delta = omega + delta (Delta = " + fmt(offset) + ")");
    } else {
        delta = d.delta.value_or(0.0);
        omega = offset - delta;
    }
    if (!(omega > 0.0)) throw ValidationError("drive: resolved omega = Delta - delta must be > 0 (got " + fmt(omega) + ")");
    if (!(d.j1 >= 0.0)) throw ValidationError("drive.j1: amplitude must be >= 0");
    c.drive = DriveParams{d.j0, d.j1, omega, delta};
    c.drive.validate();

    const auto& n = c.numerics;
    if (n.n_steps < 100) throw ValidationError("numerics.n_steps: must be >= 100");
    if (n.m_max < 0) throw ValidationError("numerics.m_max: must be >= 0");
    if (n.n_t <= 2 * n.m_max) throw ValidationError("numerics.n_t: must exceed 2 m_max");
    if (!(n.dt > 0.0) || !(n.t_end > 0.0) || !(n.sample_interval > 0.0))
        throw ValidationError("numerics: dt, t_end and sample_interval must be > 0");
    if (c.family && c.family->parameter == "Delta" && c.baths.left().gamma_big)
        throw ValidationError("family: varying Delta requires baths.L without gamma_big/lambda");
    return c;
}

PerReservoir<BathState> ScenarioConfig::initial_baths() const {
    PerReservoir<BathState> b;
    for (Reservoir nu : kReservoirs) {
        const BathConfig& bc = baths[nu];
        b[nu] = BathState{bc.temperature, bc.chemical_potential, bc.rho, bc.band_bottom};
    }
    return b;
}

FloquetOptions ScenarioConfig::floquet_options() const {
    FloquetOptions o;
    o.propagator.n_steps = numerics.n_steps;
    o.n_t = numerics.n_t;
    o.m_max = numerics.m_max;
    return o;
}

TrajectoryConfig ScenarioConfig::trajectory_config() const {
    TrajectoryConfig t;
    t.dt = numerics.dt;
    t.t_end = numerics.t_end;
    t.sample_interval = numerics.sample_interval;
    return t;
}

std::vector<std::string> ScenarioConfig::describe() const {
    std::vector<std::string> out;
    out.push_back("scenario = " + name);
    if (!description.empty()) out.push_back("description = " + description);
    if (!caption.empty()) out.push_back("caption = " + caption);
    out.push_back("eps0 = " + fmt(eps0));
    out.push_back("J0 = " + fmt(drive.j0) + ", J1 = " + fmt(drive.j1));
    out.push_back("Delta = lambda_L - lambda_R = " + fmt(system.channel_offset()) + ", omega = " + fmt(drive.omega) +
                  ", delta = " + fmt(drive.delta));
    const auto b = initial_baths();
    for (Reservoir nu : kReservoirs) {
        const std::string s(to_string(nu));
        out.push_back("Gamma_" + s + " = " + fmt(spectra[nu].gamma_big) + ", eta_" + s + " = " + fmt(spectra[nu].eta) +
                      ", lambda_" + s + " = " + fmt(rc[nu].lambda) + ", gamma_" + s + " = " +
                      fmt(rc[nu].residual_coupling));
        out.push_back("rho_" + s + " = " + fmt(b[nu].dos) + ", T_" + s + " = " + fmt(b[nu].temperature) + ", mu_" + s +
                      " = " + fmt(b[nu].chemical_potential));
    }
    out.push_back("n_steps = " + std::to_string(numerics.n_steps) + ", n_t = " + std::to_string(numerics.n_t) +
                  ", m_max = " + std::to_string(numerics.m_max));
    return out;
}

ScenarioConfig with_family_value(const ScenarioConfig& config, double value) {
    if (!config.family) throw ValidationError("with_family_value: scenario has no family");
    ScenarioConfig c = config;
    const std::string& p = config.family->parameter;
    if (p == "Delta") {
        c.drive_input.channel_offset = value;
    } else if (p == "j1") {
        c.drive_input.j1 = value;
    } else if (p == "delta") {
        c.drive_input.delta = value;
        c.drive_input.omega.reset();
    } else if (p == "delta_over_j1") {
        c.drive_input.delta = value * c.drive_input.j1;
        c.drive_input.omega.reset();
    }
    c.family.reset();
    c.name = config.name + "[" + p + "=" + fmt(value) + "]";
    return resolve(std::move(c));
}

std::vector<ScenarioConfig> expand_family(const ScenarioConfig& config) {
    if (!config.family) return {config};
    std::vector<ScenarioConfig> out;
    for (double v : config.family->values) out.push_back(with_family_value(config, v));
    return out;
}

HeatPumpModel build_model(const ScenarioConfig& config) {
    return HeatPumpModel(config.system, config.drive, config.rc, config.floquet_options());
}

SweepResult run_sweep(const HeatPumpModel& model, const ScenarioConfig& config, const SweepGrid& grid,
                      unsigned threads) {
    grid.validate();
    const auto dTs = grid.dT_values();
    const auto dmus = grid.dmu_values();
    const PerReservoir<BathState> base = config.initial_baths();
    const double tau = model.time_unit(base.right());

    SweepResult result;
    result.grid = grid;
    result.cells = parallel_map(dTs.size() * dmus.size(), threads, [&](std::size_t i) {
        SweepCell cell;
        cell.dT = dTs[i / dmus.size()];
        cell.dmu = dmus[i % dmus.size()];
        PerReservoir<BathState> b = base;
        b.right().temperature = base.left().temperature + cell.dT;
        b.right().chemical_potential = base.left().chemical_potential + cell.dmu;
        try {
            cell.right_temperature_rate = tau * model.evaluate(b).bath_rates.right().temperature_dot;
        } catch (const std::exception& e) {
            cell.failure = e.what();
        }
        return cell;
    });
    return result;
}

SweepResult run_sweep(const ScenarioConfig& config, const SweepGrid& grid, unsigned threads) {
    return run_sweep(build_model(config), config, grid, threads);
}

std::vector<FamilyRun> run_family(const ScenarioConfig& config, unsigned threads) {
    const auto members = expand_family(config);
    return parallel_map(members.size(), threads, [&](std::size_t i) {
        const ScenarioConfig& c = members[i];
        const HeatPumpModel model = build_model(c);
        return FamilyRun{c, integrate_trajectory(c.initial_baths(), model, c.trajectory_config())};
    });
}

} // namespace qhp
