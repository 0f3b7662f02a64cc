// qhp: command-line front end for the driven quantum-dot heat pump.
//
// Exit codes: 0 success, 1 invalid input or I/O failure, 2 numerical failure
// (including a trajectory that stopped early).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhp/csv_output.hpp"
#include "qhp/error.hpp"
#include "qhp/parallel.hpp"
#include "qhp/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Options {
    std::string config;
    std::string out;
    unsigned threads = qhp::default_thread_count();
    std::optional<double> dt;
    std::optional<double> t_end;
    std::string grid;
};

qhp::ScenarioConfig load(const Options& opt) {
    qhp::ScenarioConfig c = qhp::load_config(opt.config);
    if (opt.dt) c.numerics.dt = *opt.dt;
    if (opt.t_end) c.numerics.t_end = *opt.t_end;
    if (opt.dt || opt.t_end) c = qhp::resolve(std::move(c));
    return c;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty() || opt.out == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        qhp::write_file(opt.out, text);
    }
}

fs::path member_path(const fs::path& out, std::size_t k) {
    fs::path p = out.parent_path() / out.stem();
    p += "." + std::to_string(k) + (out.has_extension() ? out.extension().string() : std::string(".csv"));
    return p;
}

int cmd_rc_map(const Options& opt) {
    const auto c = load(opt);
    std::string text = "reservoir,Gamma,eta,center,lambda,rc_energy,gamma\n";
    for (qhp::Reservoir nu : qhp::kReservoirs) {
        const auto& s = c.spectra[nu];
        const auto& rc = c.rc[nu];
        text += std::string(qhp::to_string(nu)) + "," + qhp::format_double(s.gamma_big) + "," +
                qhp::format_double(s.eta) + "," + qhp::format_double(s.center) + "," +
                qhp::format_double(rc.lambda) + "," + qhp::format_double(rc.rc_energy) + "," +
                qhp::format_double(rc.residual_coupling) + "\n";
    }
    emit(opt, text);
    return kExitOk;
}

int cmd_floquet(const Options& opt) {
    const auto c = load(opt);
    const auto model = qhp::build_model(c);
    emit(opt, qhp::floquet_report_csv(model.floquet(), c.describe()));
    return kExitOk;
}

int cmd_steady(const Options& opt) {
    const auto c = load(opt);
    const auto model = qhp::build_model(c);
    const auto baths = c.initial_baths();
    const auto point = model.evaluate(baths);
    emit(opt, qhp::steady_csv(point, model.floquet(), baths, model.time_unit(baths.right()), c.describe()));
    return kExitOk;
}

int cmd_evolve(const Options& opt) {
    const auto c = load(opt);
    const auto runs = qhp::run_family(c, opt.threads);
    if (runs.size() > 1 && (opt.out.empty() || opt.out == "-"))
        throw qhp::ValidationError("--out: a family of " + std::to_string(runs.size()) +
                                   " trajectories needs an output path; members go to <stem>.<k>.csv");
    int status = kExitOk;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& run = runs[k];
        const std::string text = qhp::trajectory_csv(run.trajectory, run.config.describe());
        if (runs.size() == 1 && !c.family) {
            emit(opt, text);
        } else {
            qhp::write_file(member_path(opt.out, k), text);
        }
        if (!run.trajectory.completed) {
            std::cerr << "qhp: " << run.config.name << ": trajectory stopped early: " << run.trajectory.diagnostic
                      << '\n';
            status = kExitNumerical;
        }
    }
    return status;
}

int cmd_sweep(const Options& opt) {
    const auto c = load(opt);
    qhp::SweepGrid grid;
    if (!opt.grid.empty()) {
        grid = qhp::parse_grid(opt.grid);
    } else if (c.sweep) {
        grid = *c.sweep;
    } else {
        throw qhp::ValidationError("--grid: the scenario has no sweep block, so a grid is required");
    }
    const auto result = qhp::run_sweep(c, grid, opt.threads);
    emit(opt, qhp::sweep_csv(result, c.describe()));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven quantum-dot heat pump: Floquet rates, currents and finite-bath dynamics"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output path (stdout if omitted)");
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto* rc = app.add_subcommand("rc-map", "Print reaction-coordinate parameters of both baths");
    add_common(rc);
    auto* fl = app.add_subcommand("floquet", "Emit the Floquet report: quasienergies and |C^(m)|/gamma");
    add_common(fl);
    auto* st = app.add_subcommand("steady", "Emit steady occupations, currents and bath rates at t = 0");
    add_common(st);
    auto* ev = app.add_subcommand("evolve", "Integrate the finite-bath trajectory (or the scenario family)");
    add_common(ev);
    ev->add_option("--dt", opt.dt, "RK4 step in units of tau")->check(CLI::PositiveNumber);
    ev->add_option("--t-end", opt.t_end, "Final time in units of tau")->check(CLI::PositiveNumber);
    auto* sw = app.add_subcommand("sweep", "Emit the dT_R/dt heatmap over (dT, dmu)");
    add_common(sw);
    sw->add_option("--grid", opt.grid, "dTmin:dTmax:n,dmumin:dmumax:n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*rc) return cmd_rc_map(opt);
        if (*fl) return cmd_floquet(opt);
        if (*st) return cmd_steady(opt);
        if (*ev) return cmd_evolve(opt);
        if (*sw) return cmd_sweep(opt);
    } catch (const qhp::ValidationError& e) {
        std::cerr << "qhp: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const qhp::IoError& e) {
        std::cerr << "qhp: " << e.what() << '\n';
        return kExitValidation;
    } catch (const qhp::NumericalError& e) {
        std::cerr << "qhp: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "qhp: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitValidation;
}
