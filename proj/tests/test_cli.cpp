#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int status;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string cmd = std::string(QHP_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qhp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name) << text;
        return tmp(name);
    }
    fs::path dir_;
};

const std::string kFig3 = qhp::test::scenario_path("fig3.json");

} // namespace

TEST_F(Cli, RcMapPrintsCouplings) {
    const CliResult r = run("rc-map --config " + kFig3);
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("L,10000,0.080000000000000002,50,20,50,0.16"), std::string::npos) << r.out;
}

TEST_F(Cli, FloquetReportHeader) {
    const CliResult r = run("floquet --config " + kFig3 + " --out " + tmp("f.csv"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(slurp(tmp("f.csv")).find("\nmode_label,quasienergy,C_L_m-5"), std::string::npos);
}

TEST_F(Cli, SweepIsByteIdenticalAcrossThreadCounts) {
    const std::string grid = " --grid -9:9:7,-10:10:5";
    ASSERT_EQ(run("sweep --config " + kFig3 + grid + " --threads 1 --out " + tmp("a.csv")).status, 0);
    ASSERT_EQ(run("sweep --config " + kFig3 + grid + " --threads 6 --out " + tmp("b.csv")).status, 0);
    ASSERT_EQ(run("sweep --config " + kFig3 + grid + " --threads 6 --out " + tmp("c.csv")).status, 0);
    const std::string a = slurp(tmp("a.csv"));
    EXPECT_EQ(a, slurp(tmp("b.csv")));
    EXPECT_EQ(a, slurp(tmp("c.csv")));
    EXPECT_NE(a.find("\ndT,dmu,dTR_dt\n"), std::string::npos);
}

TEST_F(Cli, EvolveFamilyWritesOneFilePerMember) {
    const CliResult r = run("evolve --config " + qhp::test::scenario_path("fig5a.json") + " --t-end 20 --dt 0.5 --threads 3 --out " +
                      tmp("traj.csv"));
    ASSERT_EQ(r.status, 0) << r.out;
    for (int k = 0; k < 4; ++k) {
        const std::string text = slurp(tmp("traj." + std::to_string(k) + ".csv"));
        EXPECT_NE(text.find("\nt_tau,T_L,mu_L,T_R,mu_R,dTR_dt\n"), std::string::npos);
    }
    const CliResult again = run("evolve --config " + qhp::test::scenario_path("fig5a.json") +
                          " --t-end 20 --dt 0.5 --threads 1 --out " + tmp("again.csv"));
    ASSERT_EQ(again.status, 0);
    EXPECT_EQ(slurp(tmp("traj.2.csv")), slurp(tmp("again.2.csv")));
}

TEST_F(Cli, SteadyToStdout) {
    const CliResult r = run("steady --config " + kFig3);
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("quantity,value"), std::string::npos);
}

TEST_F(Cli, ValidationFailureExitsOne) {
    const std::string bad = write("bad.json", R"({"system": {"eps0": 1}, "drive": {"j1": 0.1, "zz": 1}, "baths": {}})");
    const CliResult r = run("steady --config " + bad);
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("drive.zz"), std::string::npos) << r.out;
    EXPECT_EQ(run("sweep --config " + kFig3 + " --grid 1:2").status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("steady --config /nonexistent.json").status, 1);
    EXPECT_EQ(run("steady --config " + kFig3 + " --out /proc/nope/x.csv").status, 1);
}

TEST_F(Cli, NumericalFailureExitsTwo) {
    // One harmonic cannot carry the driven modes: Parseval check fails.
    std::string text = slurp(kFig3);
    text.replace(text.find("\"m_max\": 5"), 10, "\"m_max\": 0");
    const CliResult r = run("floquet --config " + write("m0.json", text));
    EXPECT_EQ(r.status, 2) << r.out;
    EXPECT_NE(r.out.find("Parseval"), std::string::npos);
}
