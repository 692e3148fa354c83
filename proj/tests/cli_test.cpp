// Copyright 2026 The labs-qaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "labs/cli.hpp"
#include "labs/qaoa.hpp"
#include "labs/serialize.hpp"

namespace labs_qaoa {
namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
    [[nodiscard]] Json json() const { return Json::parse(out); }
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "labs");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    CliResult r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliDir : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("labs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }
    [[nodiscard]] std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    fs::path dir_;
};

TEST(ParseIntList, Forms) {
    EXPECT_EQ(parse_int_list("10,12,14"), (std::vector<int>{10, 12, 14}));
    EXPECT_EQ(parse_int_list("10:13"), (std::vector<int>{10, 11, 12, 13}));
    EXPECT_EQ(parse_int_list("8,10:12"), (std::vector<int>{8, 10, 11, 12}));
    EXPECT_THROW(parse_int_list("12:10"), std::invalid_argument);
    EXPECT_THROW(parse_int_list("a"), std::invalid_argument);
    EXPECT_THROW(parse_int_list(""), std::invalid_argument);
}

TEST(Cli, EnergyOfShortSequence) {
    const CliResult r = cli({"energy", "--n", "3", "--seq", "++-"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "E=1 F=4.5\n");
}

TEST(Cli, EnergyJsonAndHexAgree) {
    const CliResult a = cli({"--format", "json", "energy", "--seq", "+++--+-"});
    ASSERT_EQ(a.code, 0) << a.err;
    const Json ja = a.json();
    const CliResult b = cli({"--format", "json", "energy", "--n", "7", "--hex", ja.at("hex").get<std::string>()});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(ja.at("energy"), b.json().at("energy"));
    EXPECT_EQ(ja.at("energy"), 3);  // Barker sequence of length 7
}

TEST(Cli, UsageErrorsExitWithTwo) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"energy", "--bogus"}).code, 2);
    EXPECT_EQ(cli({"nonsense"}).code, 2);
    EXPECT_EQ(cli({"energy", "--seq", "++x"}).code, 2);
    EXPECT_EQ(cli({"qaoa", "--n", "6"}).code, 2);  // no schedule
    const CliResult r = cli({"--workers", "0", "table", "--n", "4"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, VersionAndHelpExitZero) {
    const CliResult v = cli({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find(kVersion), std::string::npos);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ResourceAdvisoryExitsWithThree) {
    const CliResult r = cli({"correlate", "--n", "25"});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(cli({"optimal", "--n", "29"}).code, 3);
}

TEST_F(CliDir, QaoaFromParamsFile) {
    const Schedule s{{-0.16, -0.1}, {0.07, 0.05}, {}};
    write_text_file(path("sched.json"), to_json(s).dump());
    const CliResult r = cli({"qaoa", "--n", "9", "--p", "2", "--params", path("sched.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    const EnergyTable t = build_energy_table(9);
    const double want = optimal_probability(prepare_qaoa_state(t, s), t);
    EXPECT_DOUBLE_EQ(j.at("p_opt").get<double>(), want);
    EXPECT_EQ(j.at("N"), 9);
    EXPECT_EQ(j.at("p"), 2);
    EXPECT_EQ(cli({"qaoa", "--n", "9", "--p", "3", "--params", path("sched.json")}).code, 2);
}

TEST_F(CliDir, SweepThenFit) {
    const CliResult sweep = cli({"--out", dir_.string(), "--seed", "3", "tts-sweep", "--solver", "tabu", "--sizes", "8:12",
                           "--seeds", "4", "--budget", "1000000"});
    ASSERT_EQ(sweep.code, 0) << sweep.err;
    ASSERT_TRUE(fs::exists(dir_ / "tts_canonical.csv"));
    const Json manifest = Json::parse(read("manifest.json"));
    EXPECT_EQ(manifest.at("command"), "tts-sweep");
    EXPECT_EQ(manifest.at("global").at("seed"), 3);
    EXPECT_EQ(manifest.at("options").at("sizes"), "8:12");
    EXPECT_EQ(manifest.at("exit_code"), 0);

    const CliResult fit = cli({"fit", "--input", path("tts.csv"), "--nmin", "8"});
    ASSERT_EQ(fit.code, 0) << fit.err;
    const Json j = fit.json();
    EXPECT_GT(j.at("base").get<double>(), 1.0);
    EXPECT_EQ(j.at("n"), 5);
    EXPECT_EQ(j.at("N_min"), 8);
    ASSERT_EQ(j.at("ci").size(), 2U);
    EXPECT_LE(j.at("ci")[0].get<double>(), j.at("base").get<double>());

    // Same config, same seed: byte-identical canonical output at another worker count.
    const std::string first = read("tts_canonical.csv");
    fs::remove(dir_ / "sweep_journal.jsonl");
    const CliResult again = cli({"--out", dir_.string(), "--seed", "3", "--workers", "8", "tts-sweep", "--solver", "tabu",
                           "--sizes", "8:12", "--seeds", "4", "--budget", "1000000"});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(read("tts_canonical.csv"), first);
}

TEST_F(CliDir, SweepWithFailedCellsExitsWithOne) {
    const CliResult r = cli({"--out", dir_.string(), "tts-sweep", "--solver", "exhaustive", "--sizes", "6,29"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("failed"), std::string::npos);
    const Json j = r.json();
    ASSERT_EQ(j.at("failed").size(), 1U);
    EXPECT_EQ(j.at("failed")[0].at("N"), 29);
    EXPECT_NE(read("tts_canonical.csv").find("exhaustive,6,"), std::string::npos);
}

TEST_F(CliDir, ManifestRecordsFailure) {
    const CliResult r = cli({"--out", dir_.string(), "energy", "--seq", "+?"});
    EXPECT_EQ(r.code, 2);
    const Json m = Json::parse(read("manifest.json"));
    EXPECT_EQ(m.at("exit_code"), 2);
    EXPECT_TRUE(m.contains("error"));
}

TEST(Cli, CompileSmallestInstance) {
    const CliResult r = cli({"compile", "--n", "3", "--gamma", "0.25"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Circuit c = circuit_from_json(r.json());
    ASSERT_EQ(c.gates.size(), 1U);
    EXPECT_EQ(c.gates[0], Gate::rzz(0, 2, 0.5));
}

TEST(Cli, ChecksReportFullDetection) {
    const CliResult r = cli({"checks", "--n", "6", "--m", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j.at("detected"), j.at("injections"));
}

TEST(Cli, TimeModel) {
    const CliResult r = cli({"time-model", "--t0", "2", "--p-list", "0.9,0.9,0.9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_DOUBLE_EQ(j.at("t1").get<double>(), 2 / 0.729);
    EXPECT_LT(j.at("t2").get<double>(), j.at("t1").get<double>());
    const CliResult inf = cli({"time-model", "--p-list", "0.5,0"});
    ASSERT_EQ(inf.code, 0);
    EXPECT_TRUE(inf.json().at("t1").is_null());
}

TEST(Cli, AmplitudeAmplification) {
    const CliResult r = cli({"aa", "--p0", "1e-6", "--steps", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    ASSERT_EQ(j.at("steps").size(), 3U);
    EXPECT_EQ(j.at("steps")[0].at("gain"), 1.0);
    EXPECT_NEAR(j.at("steps")[1].at("gain").get<double>(), 9.0, 1e-4);
}

}  // namespace
}  // namespace labs_qaoa
