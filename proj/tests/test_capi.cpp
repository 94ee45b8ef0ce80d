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

#include "fsosec/fsosec.h"

#include <cmath>
#include <cstring>
#include <string>

namespace {

const std::string kRoot = FSOSEC_SOURCE_DIR;

std::string take(char* s) {
    std::string out = s ? s : "";
    fsosec_string_free(s);
    return out;
}

fsosec_scenario* load(const char* name) {
    fsosec_scenario* s = nullptr;
    REQUIRE(fsosec_scenario_load_file((kRoot + "/scenarios/" + name).c_str(), &s) == FSOSEC_OK);
    return s;
}

} // namespace

TEST_CASE("library identity and status names") {
    CHECK(std::strlen(fsosec_version()) > 0);
    CHECK(std::string(fsosec_status_name(FSOSEC_OK)) == "ok");
    CHECK(std::string(fsosec_status_name(FSOSEC_ERR_VALIDATION)) == "validation error");
}

TEST_CASE("scenario lifecycle") {
    fsosec_scenario* s = load("haps_uav.scenario");

    fsosec_channel_info info{};
    REQUIRE(fsosec_channel_derive(s, FSOSEC_DESTINATION, &info) == FSOSEC_OK);
    CHECK(info.rytov_variance == doctest::Approx(0.37025224754204877735).epsilon(1e-9));
    CHECK(info.ew.alpha == doctest::Approx(5.0857269432500262798).epsilon(1e-8));
    CHECK(info.transmittance < 1.0);

    uint64_t h1 = 0;
    uint64_t h2 = 0;
    REQUIRE(fsosec_scenario_hash(s, &h1) == FSOSEC_OK);
    char* text = nullptr;
    REQUIRE(fsosec_scenario_serialize(s, &text) == FSOSEC_OK);
    fsosec_scenario* copy = nullptr;
    REQUIRE(fsosec_scenario_load_text(text, &copy) == FSOSEC_OK);
    fsosec_string_free(text);
    REQUIRE(fsosec_scenario_hash(copy, &h2) == FSOSEC_OK);
    CHECK(h1 == h2);
    fsosec_scenario_free(copy);

    char* json = nullptr;
    REQUIRE(fsosec_channel_report(s, FSOSEC_EAVESDROPPER, FSOSEC_FORMAT_JSON, &json) == FSOSEC_OK);
    CHECK(take(json).find("\"ew_alpha\"") != std::string::npos);

    REQUIRE(fsosec_scenario_override(s, "zenith_angle_deg=95") == FSOSEC_OK);
    CHECK(fsosec_scenario_validate(s) == FSOSEC_ERR_VALIDATION);
    CHECK(std::string(fsosec_last_error()).find("zenith_angle_deg") != std::string::npos);
    CHECK(fsosec_channel_derive(s, FSOSEC_DESTINATION, &info) == FSOSEC_ERR_VALIDATION);
    CHECK(fsosec_scenario_override(s, "no_such_key=1") == FSOSEC_ERR_VALIDATION);
    fsosec_scenario_free(s);
}

TEST_CASE("error statuses") {
    fsosec_scenario* s = nullptr;
    CHECK(fsosec_scenario_load_file("/nonexistent/x.scenario", &s) == FSOSEC_ERR_NOT_FOUND);
    CHECK(s == nullptr);
    CHECK(fsosec_scenario_load_text("a = 1\na = 2\n", &s) == FSOSEC_ERR_PARSE);
    CHECK(fsosec_scenario_load_text(nullptr, &s) == FSOSEC_ERR_INVALID_ARGUMENT);
    CHECK(fsosec_scenario_validate(nullptr) == FSOSEC_ERR_INVALID_ARGUMENT);

    const fsosec_ew_params bad{-1, 2, 1};
    double out = 0;
    CHECK(fsosec_ew_pdf(&bad, 0.5, &out) == FSOSEC_ERR_DOMAIN);
    CHECK(fsosec_ew_pdf(nullptr, 0.5, &out) == FSOSEC_ERR_INVALID_ARGUMENT);
    fsosec_scenario_free(nullptr);
}

TEST_CASE("primitives") {
    const fsosec_ew_params p{2.0, 2.0, 1.0};
    double v = 0;
    REQUIRE(fsosec_ew_cdf(&p, 1.0, &v) == FSOSEC_OK);
    CHECK(v == doctest::Approx(0.3995764008937280487).epsilon(1e-14));
    const fsosec_ew_params q{5.0, 2.0, 0.9};
    REQUIRE(fsosec_ew_quantile(&q, 0.9, &v) == FSOSEC_OK);
    CHECK(v == doctest::Approx(1.770582237538484917).epsilon(1e-13));

    fsosec_ew_params fit{};
    REQUIRE(fsosec_ew_fit(0.5, 0, &fit) == FSOSEC_OK);
    CHECK(fit.alpha == doctest::Approx(5.4448241579629721887).epsilon(1e-12));
    REQUIRE(fsosec_ew_moment(&fit, 2, &v) == FSOSEC_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

    double th = 0;
    REQUIRE(fsosec_threshold_from_rate(0.5, FSOSEC_CONVENTION_PAPER, &th) == FSOSEC_OK);
    CHECK(th == doctest::Approx(2.0));

    double sop = 0;
    double ppsc = 0;
    const fsosec_ew_params one{1.0, 2.0, 1.0};
    REQUIRE(fsosec_sop(&one, 100, 10, 1.0, 0, &sop) == FSOSEC_OK);
    CHECK(sop == doctest::Approx(0.1 / 1.1).epsilon(1e-12));
    REQUIRE(fsosec_ppsc(&one, 100, 10, 0, &ppsc) == FSOSEC_OK);
    CHECK(ppsc == doctest::Approx(1.0 / 1.1).epsilon(1e-12));

    fsosec_mc_result mc{};
    REQUIRE(fsosec_mc_secrecy(&one, 100, 10, 1.0, 3, 100000, 4, &mc) == FSOSEC_OK);
    CHECK(std::abs(mc.sop_approximated.value - sop) < 4 * mc.sop_approximated.std_error);
    CHECK(mc.ppsc.value + mc.sop_approximated.value == doctest::Approx(1.0));

    double stat = 0;
    double crit = 0;
    REQUIRE(fsosec_ks_check(&q, &q, 20000, 5, &stat, &crit) == FSOSEC_OK);
    CHECK(stat < crit);

    fsosec_path path{1550e-9, 70 * 3.14159265358979323846 / 180, 21, 1.7e-14, 200, 20000, 0};
    double rytov = 0;
    double scint = 0;
    REQUIRE(fsosec_turbulence(&path, &rytov, &scint) == FSOSEC_OK);
    CHECK(rytov == doctest::Approx(0.37025224754204877735).epsilon(1e-9));
    CHECK(scint == doctest::Approx(0.33702827891157388608).epsilon(1e-9));
}

TEST_CASE("grid parsing") {
    double* values = nullptr;
    size_t n = 0;
    REQUIRE(fsosec_parse_grid("0:10:40", &values, &n) == FSOSEC_OK);
    REQUIRE(n == 5);
    CHECK(values[4] == 40);
    fsosec_doubles_free(values);
    CHECK(fsosec_parse_grid("1,x", &values, &n) == FSOSEC_ERR_VALIDATION);
}

TEST_CASE("sweep through the C interface") {
    fsosec_sweep* sw = nullptr;
    REQUIRE(fsosec_sweep_load_file((kRoot + "/sweeps/fig2.sweep").c_str(), &sw) == FSOSEC_OK);
    CHECK(take([&] {
              char* n = nullptr;
              fsosec_sweep_name(sw, &n);
              return n;
          }()) == "fig2");
    REQUIRE(fsosec_sweep_set_grid(sw, "10, 20") == FSOSEC_OK);
    CHECK(fsosec_sweep_set_grid(sw, "20, 10, 30") == FSOSEC_ERR_VALIDATION);
    REQUIRE(fsosec_sweep_set_with_mc(sw, 1) == FSOSEC_OK);
    REQUIRE(fsosec_sweep_set_mc_samples(sw, 20000) == FSOSEC_OK);
    CHECK(fsosec_sweep_set_mc_samples(sw, 10) == FSOSEC_ERR_VALIDATION);
    REQUIRE(fsosec_sweep_set_shards(sw, 4) == FSOSEC_OK);

    fsosec_sweep_result* r = nullptr;
    REQUIRE(fsosec_sweep_run(sw, &r) == FSOSEC_OK);
    CHECK(fsosec_sweep_result_curve_count(r) == 4);
    size_t rows = 0;
    REQUIRE(fsosec_sweep_result_row_count(r, 2, &rows) == FSOSEC_OK);
    CHECK(rows == 2);
    double sop0 = 0;
    double sop1 = 0;
    REQUIRE(fsosec_sweep_result_value(r, 2, 0, "sop", &sop0) == FSOSEC_OK);
    REQUIRE(fsosec_sweep_result_value(r, 2, 1, "sop", &sop1) == FSOSEC_OK);
    CHECK(sop1 < sop0);
    double x = 0;
    CHECK(fsosec_sweep_result_value(r, 2, 0, "nope", &x) == FSOSEC_ERR_INVALID_ARGUMENT);
    CHECK(fsosec_sweep_result_value(r, 9, 0, "sop", &x) == FSOSEC_ERR_INVALID_ARGUMENT);
    char* csv = nullptr;
    REQUIRE(fsosec_sweep_result_render(r, 0, FSOSEC_FORMAT_CSV, &csv) == FSOSEC_OK);
    CHECK(take(csv).find("sop_mc") != std::string::npos);
    fsosec_sweep_result_free(r);
    fsosec_sweep_free(sw);
}

TEST_CASE("validation through the C interface") {
    fsosec_scenario* s = load("satellite_haps.scenario");
    fsosec_validation_options opts;
    fsosec_validation_options_init(&opts);
    CHECK(opts.samples == 1000000);
    opts.samples = 50000;
    fsosec_validation* v = nullptr;
    REQUIRE(fsosec_validate(s, &opts, &v) == FSOSEC_OK);
    int passed = 0;
    REQUIRE(fsosec_validation_passed(v, &passed) == FSOSEC_OK);
    CHECK(passed == 1);
    char* text = nullptr;
    REQUIRE(fsosec_validation_render(v, FSOSEC_FORMAT_TEXT, &text) == FSOSEC_OK);
    CHECK(take(text).find("PASS") != std::string::npos);
    fsosec_validation_free(v);
    fsosec_scenario_free(s);
}
