#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "zeno/app.hpp"

using namespace zeno;
using app::Command;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(Command cmd, const std::string& cfg_text, std::optional<std::string> path = std::nullopt) {
    std::ostringstream out, err;
    const int code = app::run(cmd, config::parse_config(cfg_text), path, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class TempDir : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("zeno_app_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::filesystem::path dir_;
};

const char* critical_cfg = "engine = lindblad\nkappa = 2\nt_max = 5\nsamples = 500\n";
const char* bath_cfg = "engine = bath\nn_total = 500\nomega = 100\ndelta = 20\neta = 2\n";

} // namespace

TEST(Simulate, CriticalSeriesToStdout) {
    const Result r = run(Command::Simulate, critical_cfg);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 501u);
    EXPECT_EQ(ls[0], "t,p,engine,params_digest");
    std::istringstream is(r.out);
    const auto rec = csv::read_series(is);
    ASSERT_EQ(rec.values.size(), 500u);
    for (double p : rec.values) {
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
    }
    EXPECT_EQ(rec.engine, "lindblad-closed");
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Simulate, DeterministicBytes) {
    const std::string cfg =
        "engine = bath\nn_total = 200\ndelta = 20\neta = 8\nlayout = random-uniform\nseed = 9\n";
    EXPECT_EQ(run(Command::Simulate, cfg).out, run(Command::Simulate, cfg).out);
}

TEST(Csv, RoundTripToTwelveDigits) {
    const auto s = lindblad::closed_form_series({0.5, 100.0, 1.0}, TimeGrid{5.0, 300});
    std::stringstream ss;
    csv::write(ss, s);
    const auto rec = csv::read_series(ss);
    ASSERT_EQ(rec.values.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        // 12 significant digits: half a unit in the last place is at most 5e-12 relative.
        EXPECT_NEAR(rec.times[i], s.times()[i], 5e-12 * s.times()[i]);
        EXPECT_NEAR(rec.values[i], s.values()[i], 5e-12 * s.values()[i]);
        std::ostringstream again;
        again << zeno::detail::fmt_num(rec.values[i]);
        EXPECT_EQ(again.str(), zeno::detail::fmt_num(s.values()[i]));
    }
    EXPECT_EQ(rec.params_digest, s.params_digest());
}

TEST(Csv, EmptySeriesIsHeaderOnly) {
    const TimeSeries empty({}, {}, EngineTag::Bath, "none");
    std::ostringstream os;
    csv::write(os, empty);
    EXPECT_EQ(os.str(), "t,p,engine,params_digest\n");
}

TEST(Compare, BathAgainstMasterEquation) {
    const Result r = run(Command::Compare, bath_cfg);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "engine_a,engine_b,kappa,max_abs,l2,points,resampled");
    std::vector<std::string> f;
    std::istringstream row(ls[1]);
    for (std::string x; std::getline(row, x, ',');) f.push_back(x);
    ASSERT_EQ(f.size(), 7u);
    EXPECT_EQ(f[0], "bath");
    EXPECT_EQ(f[1], "lindblad-closed");
    EXPECT_NEAR(std::stod(f[2]), 2.0, 1e-12);
    EXPECT_LE(std::stod(f[3]), 0.05);
}

TEST(Sweep, TurningPointNearCritical) {
    const Result r = run(Command::Sweep, "engine = lindblad\netas = 1/8, 1/2, 2, 8, 32\n");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[0], "kappa,retention,regime,kappa_star");
    const std::string star = ls[1].substr(ls[1].rfind(',') + 1);
    ASSERT_NE(star, "none");
    EXPECT_GE(std::stod(star), 1.0);
    EXPECT_LE(std::stod(star), 4.0);
    EXPECT_NE(ls[3].find("critical"), std::string::npos);
}

TEST(Converge, Table) {
    const Result r = run(Command::Converge, "engine = collision\neta = 2\n");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], "t_int,g_atom,n_collisions,max_abs,l2,ratio");
    EXPECT_EQ(ls[1].back(), ',');  // no ratio for the first row
    EXPECT_TRUE(r.err.empty());
}

TEST_F(TempDir, EtaListWritesOneFilePerEta) {
    const std::string out = (dir_ / "zeno.csv").string();
    const Result r = run(Command::Simulate, "engine = bath\nn_total = 500\ndelta = 20\netas = 2, 8, 32\n", out);
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* label : {"eta2", "eta8", "eta32"}) {
        const auto p = dir_ / (std::string("zeno_") + label + ".csv");
        ASSERT_TRUE(std::filesystem::exists(p)) << p;
        EXPECT_EQ(csv::read_series_file(p.string()).values.size(), 500u);
    }
    EXPECT_EQ(lines(r.out).size(), 3u);
}

TEST_F(TempDir, SameConfigTwiceGivesIdenticalFiles) {
    const std::string a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
    ASSERT_EQ(run(Command::Simulate, bath_cfg, a).code, 0);
    ASSERT_EQ(run(Command::Simulate, bath_cfg, b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST_F(TempDir, OutputKeyUsedWithoutOverride) {
    const std::string p = (dir_ / "from_cfg.csv").string();
    ASSERT_EQ(run(Command::Simulate, std::string(critical_cfg) + "output = " + p + "\n").code, 0);
    EXPECT_TRUE(std::filesystem::exists(p));
}

TEST(ExitCodes, UnwritablePathIsNumericalFailure) {
    const Result r = run(Command::Simulate, critical_cfg, "/nonexistent_zeno_dir/sub/out.csv");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("kappa=2"), std::string::npos);  // offending parameters echoed
}

TEST(ExitCodes, WrongEngineForCommandIsConfigFailure) {
    EXPECT_EQ(run(Command::Sweep, bath_cfg).code, 1);
    EXPECT_EQ(run(Command::Converge, critical_cfg).code, 1);
    EXPECT_EQ(run(Command::Converge, "engine = collision\netas = 2, 8\n").code, 1);
    EXPECT_EQ(run(Command::Converge, "engine = collision\neta = 2\nn_collisions = 100\n").code, 1);
}

TEST(ExitCodes, MultipleSeriesNeedAPath) {
    const Result r = run(Command::Simulate, "engine = lindblad\netas = 2, 8\n");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("config error"), std::string::npos);
}

TEST(ExitCodes, SweepNotSpanningCriticalIsParameterFailure) {
    EXPECT_EQ(run(Command::Sweep, "engine = lindblad\nkappas = 4, 5, 6, 7, 8\n").code, 1);
}

TEST(Command, Names) {
    EXPECT_EQ(app::command_from_string("simulate"), Command::Simulate);
    EXPECT_EQ(app::command_from_string("converge"), Command::Converge);
    EXPECT_FALSE(app::command_from_string("plot").has_value());
}
