#include "tenrank/cli.hpp"
#include "tenrank/tensor_io.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tenrank;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tenrank_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
        ::unsetenv("TENRANK_TOL");
    }
    void TearDown() override {
        fs::remove_all(dir_);
        ::unsetenv("TENRANK_TOL");
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    fs::path dir_;
};

TEST_F(CliTest, SynthThenDetect) {
    const CliResult s = run({"synth", "--dims", "4,4,4", "--rank", "3", "--seed", "7", "--out", path("f.tns")});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("mt19937_64"), std::string::npos);
    const TensorFile f = read_tensor_file(path("f.tns"));
    EXPECT_EQ(f.metadata.at("seed"), "7");
    EXPECT_EQ(f.metadata.at("generator"), "mt19937_64");
    EXPECT_EQ(f.metadata.at("rank"), "3");

    const CliResult d = run({"detect", path("f.tns")});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("lower_bound: 3\n"), std::string::npos);
    EXPECT_NE(d.out.find("detected: yes, rank 3\n"), std::string::npos);
    EXPECT_NE(d.out.find("(4 x 16)"), std::string::npos);

    const CliResult b = run({"bound", path("f.tns")});
    ASSERT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("lower_bound: 3\n"), std::string::npos);
    EXPECT_EQ(b.out.find("detected:"), std::string::npos);
}

TEST_F(CliTest, DetectJsonMirrorsReport) {
    run({"synth", "--dims", "4,4,4", "--rank", "7", "--seed", "1", "--out", path("f.tns")});
    const CliResult d = run({"detect", path("f.tns"), "--json"});
    ASSERT_EQ(d.code, 0) << d.err;
    const auto j = nlohmann::json::parse(d.out);
    EXPECT_EQ(j["lower_bound"], 4);
    EXPECT_EQ(j["detected"], false);
    EXPECT_TRUE(j["detected_rank"].is_null());
    EXPECT_EQ(j["r_max"], 3);
    EXPECT_EQ(j["unfolding_shape"], nlohmann::json({4, 16}));
    EXPECT_EQ(j["split"]["s1"], nlohmann::json({1}));
    EXPECT_EQ(j["singular_values"].size(), 4u);
    EXPECT_GT(j["tolerance_used"].get<double>(), 0.0);
}

TEST_F(CliTest, SynthToStdoutIsDeterministic) {
    const CliResult a = run({"synth", "--dims", "2,3", "--rank", "2", "--seed", "5"});
    const CliResult b = run({"synth", "--dims", "2,3", "--rank", "2", "--seed", "5"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("tensor 2\ndims 2 3\n", 0), 0u);
    const CliResult m1 = run({"mc", "--trials", "30", "--seed", "3", "--verbose"});
    const CliResult m2 = run({"mc", "--trials", "30", "--seed", "3", "--verbose", "--threads", "3"});
    EXPECT_EQ(m1.out, m2.out);
    EXPECT_NE(m1.out.find("soundness_violations: 0"), std::string::npos);
}

TEST_F(CliTest, ToleranceFlagBeatsEnvironment) {
    write("t.tns", "tensor 2\ndims 2 2\n1 0 0 1e-3\n");
    EXPECT_NE(run({"bound", path("t.tns")}).out.find("lower_bound: 2"), std::string::npos);
    ::setenv("TENRANK_TOL", "0.01", 1);
    EXPECT_NE(run({"bound", path("t.tns")}).out.find("lower_bound: 1"), std::string::npos);
    EXPECT_NE(run({"bound", path("t.tns"), "--tol", "1e-9"}).out.find("lower_bound: 2"),
              std::string::npos);
    ::setenv("TENRANK_TOL", "abc", 1);
    EXPECT_EQ(run({"bound", path("t.tns")}).code, exit_usage);
}

TEST_F(CliTest, SplitAndRmax) {
    const CliResult s = run({"split", "--dims", "2,3,5"});
    ASSERT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("split: s1={3} s2={1,2}"), std::string::npos);
    EXPECT_NE(s.out.find("permutation: 3 1 2\n"), std::string::npos);
    EXPECT_NE(s.out.find("split_point: 1\n"), std::string::npos);

    const CliResult dp = run({"split", "--dims", "3,3,3,3,12", "--strategy", "sum-dp", "--json"});
    ASSERT_EQ(dp.code, 0);
    const auto j = nlohmann::json::parse(dp.out);
    EXPECT_EQ(j["min_product"], 12);
    EXPECT_EQ(j["strategy"], "sum_dp");

    const CliResult r = run({"rmax", "--dims", "20,20,20,20"});
    EXPECT_NE(r.out.find("r_max: 399\n"), std::string::npos);
    EXPECT_EQ(run({"split", "--dims", "4", "--strategy", "exact"}).code, exit_usage);
    EXPECT_EQ(run({"split", "--dims", "2,2", "--strategy", "greedy"}).code, exit_usage);
}

TEST_F(CliTest, FigureCsv) {
    const CliResult f = run({"figure", "--imax", "20", "--nmax", "11", "--out", path("fig2.csv")});
    ASSERT_EQ(f.code, 0) << f.err;
    std::ifstream in(path("fig2.csv"));
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string csv = ss.str();
    EXPECT_EQ(csv.rfind("N,I,R_max\n", 0), 0u);
    EXPECT_NE(csv.find("\n6,20,7999\n"), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 10 * 19);
    EXPECT_EQ(run({"figure", "--imax", "20", "--nmax", "11"}).out, csv);
}

TEST_F(CliTest, Nranks) {
    run({"synth", "--dims", "2,2,8", "--rank", "3", "--seed", "2", "--out", path("f.tns")});
    const CliResult n = run({"nranks", path("f.tns")});
    ASSERT_EQ(n.code, 0) << n.err;
    EXPECT_EQ(n.out, "n rows cols rank\n1 2 16 2\n2 4 8 3\n");
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({}).code, exit_usage);
    EXPECT_EQ(run({"frobnicate"}).code, exit_usage);
    EXPECT_EQ(run({"synth", "--dims", "2,2"}).code, exit_usage);  // --rank missing
    EXPECT_EQ(run({"synth", "--dims", "2,2", "--rank", "0"}).code, exit_usage);
    EXPECT_EQ(run({"--help"}).code, exit_ok);

    EXPECT_EQ(run({"detect", path("missing.tns")}).code, exit_format);
    write("bad.tns", "tensor 2\ndims 2 2\n1 2 3\n");
    const CliResult bad = run({"detect", path("bad.tns")});
    EXPECT_EQ(bad.code, exit_format);
    EXPECT_NE(bad.err.find("expected 4 values, found 3"), std::string::npos);
    write("tok.tns", "tensor 2\ndims 2 2\n1 2 three 4\n");
    EXPECT_EQ(run({"detect", path("tok.tns")}).code, exit_format);

    write("nan.tns", "tensor 2\ndims 2 2\n1 nan 3 4\n");
    EXPECT_EQ(run({"detect", path("nan.tns")}).code, exit_numerical);
}

}  // namespace
