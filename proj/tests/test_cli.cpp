/*
   Copyright 2026 The fsosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = FSOSEC_CLI;
const std::string kRoot = FSOSEC_SOURCE_DIR;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" + kCli + "' " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("fsosec_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string scenario(const char* name) { return kRoot + "/scenarios/" + name; }
std::string sweep_spec(const char* name) { return kRoot + "/sweeps/" + name; }

} // namespace

TEST_CASE("channel report") {
    const Run text = run("channel --scenario " + scenario("haps_uav.scenario"));
    CHECK(text.code == 0);
    CHECK(text.out.find("rytov_variance") != std::string::npos);

    const Run json = run("channel --scenario " + scenario("satellite_haps.scenario") +
                         " --receiver eavesdropper --format json");
    REQUIRE(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["rytov_variance"].get<double>() == doctest::Approx(0.01580861183859714823).epsilon(1e-9));
}

TEST_CASE("usage errors exit 2 and name the problem") {
    const Run missing = run("channel --scenario /nonexistent/a.scenario");
    CHECK(missing.code == 2);
    CHECK(missing.out.find("/nonexistent/a.scenario") != std::string::npos);

    const Run zenith = run("channel --scenario " + scenario("satellite_haps.scenario") +
                           " --override zenith_angle_deg=95");
    CHECK(zenith.code == 2);
    CHECK(zenith.out.find("zenith_angle_deg") != std::string::npos);

    CHECK(run("sweep --spec " + sweep_spec("fig2.sweep") + " --grid '' --out -").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("sweep").code == 2);
    CHECK(run("validate --scenario " + scenario("haps_uav.scenario") + " --mc-samples 10").code == 2);
    CHECK(run("channel --scenario " + scenario("haps_uav.scenario") + " --format yaml").code == 2);
}

TEST_CASE("unwritable output exits 4") {
    CHECK(run("channel --scenario " + scenario("haps_uav.scenario") + " --out /nonexistent/dir/x.txt").code == 4);
}

TEST_CASE("validate exits 0 on agreement and 1 on a corrupted sampler") {
    const std::string base = "validate --scenario " + scenario("haps_uav.scenario") + " --mc-samples 200000";
    const Run ok = run(base);
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);
    const Run bad = run(base + " --override diagnostic_mc_beta_scale=1.1");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("sweep files are deterministic across runs and shard counts") {
    const fs::path a = scratch("a");
    const fs::path b = scratch("b");
    const std::string base = "sweep --spec " + sweep_spec("fig2.sweep") + " --grid 0:10:40 --with-mc --mc-samples 20000";
    REQUIRE(run(base + " --shards 1 --out " + a.string()).code == 0);
    REQUIRE(run(base + " --shards 4 --out " + b.string()).code == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files == 4);
    CHECK(fs::exists(a / "fig2_uav_zenith80.csv"));
}

TEST_CASE("CSV and JSON outputs agree") {
    const fs::path d = scratch("formats");
    const std::string base = "sweep --spec " + sweep_spec("fig5.sweep") + " --grid 0,20 --out " + d.string();
    REQUIRE(run(base).code == 0);
    REQUIRE(run(base + " --format json").code == 0);
    for (const auto& e : fs::directory_iterator(d)) {
        if (e.path().extension() != ".json") {
            continue;
        }
        const auto j = nlohmann::json::parse(slurp(e.path()));
        fs::path csv = e.path();
        csv.replace_extension(".csv");
        REQUIRE(fs::exists(csv));
        std::istringstream lines(slurp(csv));
        std::string line;
        std::string header;
        int data_rows = 0;
        while (std::getline(lines, line)) {
            if (line.rfind("#", 0) == 0) {
                continue;
            }
            if (header.empty()) {
                header = line;
            } else {
                ++data_rows;
            }
        }
        CHECK(data_rows == static_cast<int>(j["rows"].size()));
        CHECK(header.find("ppsc") != std::string::npos);
        const double ppsc_json = j["rows"][1]["ppsc"].get<double>();
        CHECK(slurp(csv).find(nlohmann::json(ppsc_json).dump().substr(0, 12)) != std::string::npos);
    }
}

TEST_CASE("output directory from the environment") {
    const fs::path d = scratch("env");
    const Run r = run("sweep --spec " + sweep_spec("fig3.sweep") + " --grid 10,20", "FSOSEC_OUTPUT_DIR='" + d.string() + "'");
    CHECK(r.code == 0);
    CHECK(std::distance(fs::directory_iterator(d), fs::directory_iterator{}) == 3);
}

TEST_CASE("stdout sweep") {
    const Run r = run("sweep --spec " + sweep_spec("fig4.sweep") + " --grid 20 --out -");
    CHECK(r.code == 0);
    CHECK(r.out.find("# curve: ") != std::string::npos);
}
