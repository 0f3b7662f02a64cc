#include "qhp/csv_output.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qhp/error.hpp"

namespace qhp {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void put_comments(std::ostringstream& os, const std::vector<std::string>& comments) {
    for (const auto& line : comments) os << "# " << line << '\n';
}

} // namespace

std::string trajectory_csv(const Trajectory& trajectory, const std::vector<std::string>& comments) {
    std::ostringstream os;
    put_comments(os, comments);
    os << "# tau = " << format_double(trajectory.time_unit) << " / J0\n";
    os << "# step-halving error = " << format_double(trajectory.step_halving_error) << '\n';
    if (!trajectory.completed) os << "# incomplete: " << trajectory.diagnostic << '\n';
    os << "t_tau,T_L,mu_L,T_R,mu_R,dTR_dt\n";
    for (const auto& s : trajectory.samples) {
        os << format_double(s.t) << ',' << format_double(s.baths.left().temperature) << ','
           << format_double(s.baths.left().chemical_potential) << ',' << format_double(s.baths.right().temperature)
           << ',' << format_double(s.baths.right().chemical_potential) << ','
           << format_double(s.right_temperature_rate) << '\n';
    }
    return os.str();
}

std::string sweep_csv(const SweepResult& sweep, const std::vector<std::string>& comments) {
    std::ostringstream os;
    put_comments(os, comments);
    os << "# grid dT = " << format_double(sweep.grid.dT_min) << ':' << format_double(sweep.grid.dT_max) << ':'
       << sweep.grid.dT_n << ", dmu = " << format_double(sweep.grid.dmu_min) << ':'
       << format_double(sweep.grid.dmu_max) << ':' << sweep.grid.dmu_n << '\n';
    for (const auto& c : sweep.cells)
        if (!c.right_temperature_rate)
            os << "# missing cell dT = " << format_double(c.dT) << ", dmu = " << format_double(c.dmu) << ": "
               << c.failure << '\n';
    os << "dT,dmu,dTR_dt\n";
    for (const auto& c : sweep.cells) {
        os << format_double(c.dT) << ',' << format_double(c.dmu) << ',';
        if (c.right_temperature_rate) os << format_double(*c.right_temperature_rate);
        os << '\n';
    }
    return os.str();
}

std::string floquet_report_csv(const FloquetData& data, const std::vector<std::string>& comments) {
    const auto& sol = data.solution;
    const auto& c = data.coupling;
    std::ostringstream os;
    put_comments(os, comments);
    os << "# omega = " << format_double(sol.omega) << ", propagator steps = " << data.n_steps
       << ", step-doubling change = " << format_double(data.propagator_convergence) << '\n';
    os << "# C_<nu>_m<m> = |C^(m)_{alpha,nu}| / gamma_nu\n";
    os << "mode_label,quasienergy";
    for (Reservoir nu : kReservoirs)
        for (int m = -c.m_max(); m <= c.m_max(); ++m) os << ",C_" << to_string(nu) << "_m" << m;
    os << '\n';
    for (int a = 0; a < kModes; ++a) {
        os << to_string(static_cast<ModeLabel>(a)) << ',' << format_double(sol.quasienergies[static_cast<std::size_t>(a)]);
        for (Reservoir nu : kReservoirs)
            for (int m = -c.m_max(); m <= c.m_max(); ++m) os << ',' << format_double(c.normalized_magnitude(nu, a, m));
        os << '\n';
    }
    return os.str();
}

std::string steady_csv(const PointEvaluation& point, const FloquetData& data, const PerReservoir<BathState>& baths,
                       double time_unit, const std::vector<std::string>& comments) {
    std::ostringstream os;
    put_comments(os, comments);
    os << "# currents are per 1/J0 and positive into the reservoir; rates of T and mu are per tau\n";
    os << "quantity,value\n";
    auto row = [&](const std::string& name, double v) { os << name << ',' << format_double(v) << '\n'; };
    for (int a = 0; a < kModes; ++a) {
        const std::string label(to_string(static_cast<ModeLabel>(a)));
        row("quasienergy_" + label, data.solution.quasienergies[static_cast<std::size_t>(a)]);
        row("occupation_" + label, point.steady.occupation[static_cast<std::size_t>(a)]);
    }
    for (Reservoir nu : kReservoirs) {
        const std::string s(to_string(nu));
        row("Ndot_" + s, point.currents.particle[nu]);
        row("Edot_" + s, point.currents.energy[nu]);
        row("Qdot_" + s, point.currents.heat(nu, baths[nu].chemical_potential));
    }
    row("drive_power", point.currents.drive_power());
    for (Reservoir nu : kReservoirs) {
        const std::string s(to_string(nu));
        row("dT" + s + "_dt", time_unit * point.bath_rates[nu].temperature_dot);
        row("dmu" + s + "_dt", time_unit * point.bath_rates[nu].mu_dot);
    }
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(path.string() + ": cannot create parent directory: " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing: " + std::strerror(errno));
    out << text;
    out.flush();
    if (!out) throw IoError(path.string() + ": write failed: " + std::strerror(errno));
}

} // namespace qhp
