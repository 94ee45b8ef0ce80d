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

#include "fsosec/errors.hpp"
#include "fsosec/sweep.hpp"

#include <cmath>
#include <filesystem>

using namespace fsosec;

namespace {

const std::filesystem::path kRoot{FSOSEC_SOURCE_DIR};

SweepSpec small_spec(const std::string& variable, const std::string& grid, const std::string& extra = "") {
    const std::string doc = "schema_version = 1\nname = t\nsweep_variable = " + variable + "\ngrid = " + grid +
                            "\nmetrics = sop, ppsc\n" + extra + "\n[curve uav]\nscenario = haps_uav.scenario\n";
    return load_sweep_spec(doc, kRoot / "sweeps");
}

} // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_grid("1, 2.5,4") == std::vector<double>{1, 2.5, 4});
    const auto g = parse_grid("0:0.1:1");
    REQUIRE(g.size() == 11);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(parse_grid("0:5:12") == std::vector<double>{0, 5, 10});
    CHECK(parse_grid("40:-10:0").size() == 5);
    CHECK(parse_grid("").empty());
    CHECK_THROWS_AS(parse_grid("0:0:1"), ValidationError);
    CHECK_THROWS_AS(parse_grid("1,x"), ValidationError);
}

TEST_CASE("names round trip") {
    for (auto v : {SweepVariable::mean_snr_d_db, SweepVariable::mean_snr_e_db, SweepVariable::zenith_angle_deg,
                   SweepVariable::aperture_m, SweepVariable::wind_speed_mps, SweepVariable::transmitter_altitude_m}) {
        CHECK(parse_sweep_variable(to_string(v)) == v);
    }
    CHECK(parse_sweep_variable("aperture_diameter_d_m") == SweepVariable::aperture_m);
    CHECK_FALSE(affects_channel(SweepVariable::mean_snr_d_db));
    CHECK(affects_channel(SweepVariable::zenith_angle_deg));
    CHECK_THROWS(parse_sweep_variable("temperature"));
    CHECK(parse_threshold_convention("shannon") == ThresholdConvention::shannon);
}

TEST_CASE("figure spec loads every curve") {
    const SweepSpec spec = load_sweep_spec_file(kRoot / "sweeps" / "fig2.sweep");
    CHECK(spec.name == "fig2");
    REQUIRE(spec.curves.size() == 4);
    CHECK(spec.curves[1].name == "satellite_zenith80");
    CHECK(spec.curves[1].scenario.zenith_angle_deg == 80);
    CHECK(spec.grid.size() == 41);
    CHECK(spec.mc.samples == 1000000);

    const SweepResult r = run_sweep(spec);
    REQUIRE(r.curves.size() == 4);
    for (const auto& c : r.curves) {
        REQUIRE(c.rows.size() == 41);
        double prev = 2.0;
        for (const auto& row : c.rows) {
            CHECK(row.status == "ok");
            REQUIRE(row.sop.has_value());
            CHECK(row.sop->value < prev);
            prev = row.sop->value;
        }
    }
}

TEST_CASE("a single point equals a direct closed-form call") {
    const SweepSpec spec = small_spec("mean_snr_d_db", "25");
    const CurveResult c = run_curve(spec, spec.curves[0]);
    REQUIRE(c.rows.size() == 1);
    const ChannelReport d = build_channel(spec.curves[0].scenario, Receiver::destination);
    SecrecyQuery q = SecrecyQuery::from_rate(d.ew, db_to_linear(25) * std::pow(d.transmittance.composite, 2),
                                             build_channel(spec.curves[0].scenario, Receiver::eavesdropper).mean_snr,
                                             0.01);
    CHECK(c.rows[0].sop->value == doctest::Approx(sop_closed_form(q).value).epsilon(1e-14));
    CHECK(c.rows[0].ppsc->value == doctest::Approx(ppsc_closed_form(q).value).epsilon(1e-14));
    CHECK(c.rows[0].mean_snr_d_db == 25);
}

TEST_CASE("channel cache does not change results") {
    for (const char* var : {"mean_snr_d_db", "wind_speed_mps"}) {
        SweepSpec spec = small_spec(var, std::string(var) == "wind_speed_mps" ? "10, 21, 30" : "0:10:40");
        spec.with_mc = true;
        spec.mc.samples = 20000;
        const CurveResult cached = run_curve(spec, spec.curves[0]);
        spec.use_cache = false;
        const CurveResult fresh = run_curve(spec, spec.curves[0]);
        REQUIRE(cached.rows.size() == fresh.rows.size());
        for (std::size_t i = 0; i < cached.rows.size(); ++i) {
            CHECK(cached.rows[i].sop->value == fresh.rows[i].sop->value);
            CHECK(cached.rows[i].ew == fresh.rows[i].ew);
            CHECK(cached.rows[i].mc->sop_approximated.hits == fresh.rows[i].mc->sop_approximated.hits);
        }
    }
}

TEST_CASE("a failing row does not stop the sweep") {
    const SweepSpec spec = small_spec("zenith_angle_deg", "60, 70, 95");
    const CurveResult c = run_curve(spec, spec.curves[0]);
    REQUIRE(c.rows.size() == 3);
    CHECK(c.rows[0].status == "ok");
    CHECK(c.rows[1].status == "ok");
    CHECK(c.rows[2].status.rfind("error:", 0) == 0);
    CHECK(c.rows[2].status.find("zenith_angle_deg") != std::string::npos);
    CHECK_FALSE(c.rows[2].sop.has_value());
}

TEST_CASE("transmitter altitude is sweepable") {
    const SweepSpec spec = small_spec("transmitter_altitude_m", "18000, 20000");
    const CurveResult c = run_curve(spec, spec.curves[0]);
    CHECK(c.rows[0].rytov_variance < c.rows[1].rytov_variance);
}

TEST_CASE("differing apertures give simulation-only rows") {
    SweepSpec spec = small_spec("aperture_m", "0.1, 0.3");
    spec.curves[0].scenario.aperture_diameter_e_m = 0.1;
    const CurveResult c = run_curve(spec, spec.curves[0]);
    CHECK(c.rows[0].status == "ok");
    CHECK(c.rows[1].status == "mc_only");
    CHECK_FALSE(c.rows[1].sop.has_value());
    CHECK(c.rows[1].ew_e != c.rows[1].ew);

    spec.with_mc = true;
    spec.mc.samples = 20000;
    const CurveResult m = run_curve(spec, spec.curves[0]);
    CHECK(m.rows[1].mc.has_value());
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(small_spec("mean_snr_d_db", "0, 10, 5"), ValidationError);
    CHECK_THROWS_AS(small_spec("mean_snr_d_db", "5, 5"), ValidationError);
    CHECK_THROWS_AS(small_spec("mean_snr_d_db", ""), ValidationError);
    try {
        load_sweep_spec("schema_version = 1\nname = t\nsweep_variable = mean_snr_d_db\ngrid = 1\n"
                        "[curve a]\nscenario = haps_uav.scenario\nzenith_angle_deg = 95\n",
                        kRoot / "sweeps");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE_FALSE(e.errors().empty());
        CHECK(e.errors()[0].field == "curve a.zenith_angle_deg");
    }
    CHECK_THROWS_AS(load_sweep_spec("schema_version = 1\nname = t\nsweep_variable = mean_snr_d_db\ngrid = 1\n"
                                    "[curve a]\nscenario = nowhere.scenario\n",
                                    kRoot / "sweeps"),
                    MissingInput);
}

TEST_CASE("validation run passes on the bundled scenario and fails when the sampler is corrupted") {
    LinkScenario s = load_scenario_file(kRoot / "scenarios" / "haps_uav.scenario");
    ValidationOptions opts;
    opts.mc.samples = 200000;
    const ValidationReport ok = run_validation(s, opts);
    CHECK(ok.passed);
    CHECK(ok.checks.size() == 10);

    s.diagnostic_mc_beta_scale = 1.1;
    const ValidationReport bad = run_validation(s, opts);
    CHECK_FALSE(bad.passed);
    CHECK(bad.checks[bad.worst].deviation > bad.checks[bad.worst].tolerance);
}
