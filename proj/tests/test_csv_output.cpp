#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qhp/csv_output.hpp"
#include "qhp/error.hpp"
#include "support.hpp"

using namespace qhp;

namespace {

std::string header_row(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("#", 0) != 0) return line;
    return "";
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> rows;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) continue;
        if (seen_header) rows.push_back(line);
        seen_header = true;
    }
    return rows;
}

} // namespace

TEST(CsvOutput, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 17.171572875253808, 0.0}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, v) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(50.0), "50");
}

TEST(CsvOutput, TrajectorySchema) {
    Trajectory t;
    t.time_unit = 6.2;
    TrajectorySample s;
    s.t = 1.5;
    s.baths = PerReservoir<BathState>{{BathState{4.0, 20.0, 1.0, 0.0}, BathState{3.5, 19.0, 1.0, 0.0}}};
    s.right_temperature_rate = -0.01;
    t.samples.push_back(s);
    const std::string csv = trajectory_csv(t, {"scenario = x"});
    EXPECT_EQ(csv.rfind("# scenario = x\n", 0), 0u);
    EXPECT_EQ(header_row(csv), "t_tau,T_L,mu_L,T_R,mu_R,dTR_dt");
    ASSERT_EQ(data_rows(csv).size(), 1u);
    EXPECT_EQ(data_rows(csv)[0], "1.5,4,20,3.5,19,-0.01");
}

TEST(CsvOutput, SweepSchemaWithMissingCell) {
    SweepResult r;
    r.grid = parse_grid("0:1:2,0:0:1");
    r.cells.push_back(SweepCell{0.0, 0.0, -0.25, ""});
    r.cells.push_back(SweepCell{1.0, 0.0, std::nullopt, "bad cell"});
    const std::string csv = sweep_csv(r);
    EXPECT_EQ(header_row(csv), "dT,dmu,dTR_dt");
    const auto rows = data_rows(csv);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "0,0,-0.25");
    EXPECT_EQ(rows[1], "1,0,");
    EXPECT_NE(csv.find("# missing cell dT = 1, dmu = 0: bad cell"), std::string::npos);
}

TEST(CsvOutput, FloquetReportSchema) {
    const ScenarioConfig c = test::preset("fig3");
    const HeatPumpModel model = build_model(c);
    const std::string csv = floquet_report_csv(model.floquet());
    std::string expected = "mode_label,quasienergy";
    for (const char* nu : {"L", "R"})
        for (int m = -5; m <= 5; ++m) expected += std::string(",C_") + nu + "_m" + std::to_string(m);
    EXPECT_EQ(header_row(csv), expected);
    const auto rows = data_rows(csv);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].rfind("up+,", 0), 0u);
    EXPECT_EQ(rows[3].rfind("down-,", 0), 0u);
}

TEST(CsvOutput, SteadySummary) {
    const ScenarioConfig c = test::preset("fig3");
    const HeatPumpModel model = build_model(c);
    const auto baths = c.initial_baths();
    const std::string csv = steady_csv(model.evaluate(baths), model.floquet(), baths, model.time_unit(baths.right()));
    EXPECT_EQ(header_row(csv), "quantity,value");
    for (const char* key : {"\noccupation_up+,", "\nNdot_L,", "\nQdot_R,", "\ndrive_power,", "\ndTR_dt,"})
        EXPECT_NE(csv.find(key), std::string::npos) << key;
}

TEST(CsvOutput, WriteFileReportsPathAndCause) {
    const auto dir = std::filesystem::temp_directory_path() / "qhp_csv_test";
    const auto path = dir / "sub" / "out.csv";
    write_file(path, "a,b\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "a,b");
    std::filesystem::remove_all(dir);

    try {
        write_file("/proc/definitely/not/writable.csv", "x");
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("/proc/definitely/not/writable.csv"), std::string::npos);
    }
}
