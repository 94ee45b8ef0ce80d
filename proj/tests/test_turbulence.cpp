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
#include "fsosec/ew_channel.hpp"
#include "fsosec/turbulence.hpp"

#include <cmath>
#include <numbers>

using namespace fsosec;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TurbulencePath satellite_path() {
    TurbulencePath p;
    p.zenith_angle_rad = 70 * kDeg;
    p.wind_speed_mps = 65;
    p.receiver_altitude_m = 18000;
    p.transmitter_altitude_m = 500000;
    return p;
}

TurbulencePath uav_path() {
    TurbulencePath p;
    p.zenith_angle_rad = 70 * kDeg;
    p.wind_speed_mps = 21;
    p.receiver_altitude_m = 200;
    p.transmitter_altitude_m = 20000;
    return p;
}

// Composite Simpson on n panels, n even.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

double irradiance_variance(const EwParams& p) {
    const double m1 = moment(1, p);
    return moment(2, p) / (m1 * m1) - 1.0;
}

} // namespace

TEST_CASE("HV profile") {
    CHECK(cn2_hufnagel_valley(0, 21, 1.7e-14) == doctest::Approx(1.727e-14).epsilon(1e-12));
    CHECK(cn2_hufnagel_valley(10000, 65, 1.7e-14) ==
          doctest::Approx(1.5663707303091607974e-16).epsilon(1e-13));
    CHECK_THROWS_AS(cn2_hufnagel_valley(-1, 21, 1.7e-14), DomainError);
}

TEST_CASE("Rytov variance matches frozen values") {
    CHECK(rytov_variance(satellite_path()) == doctest::Approx(0.01580861183859714823).epsilon(1e-9));
    CHECK(rytov_variance(uav_path()) == doctest::Approx(0.37025224754204877735).epsilon(1e-9));
}

TEST_CASE("path integral agrees with a fine Simpson rule") {
    for (const auto& path : {satellite_path(), uav_path()}) {
        const double top = std::min(path.transmitter_altitude_m, kTurbulenceCeilingM);
        const double h0 = path.receiver_altitude_m;
        auto f = [&](double h) {
            return cn2_hufnagel_valley(h, path.wind_speed_mps, path.ground_cn2) * std::pow(h - h0, 5.0 / 6.0);
        };
        const double reference = simpson(f, h0, top, 1000000);
        auto profile = [&](double h) { return cn2_hufnagel_valley(h, path.wind_speed_mps, path.ground_cn2); };
        CHECK(rytov_path_integral(path, profile).value == doctest::Approx(reference).epsilon(1e-6));
    }
}

TEST_CASE("Rytov variance structure") {
    const TurbulencePath base = uav_path();

    SUBCASE("zero profile") {
        CHECK(rytov_variance(base, [](double) { return 0.0; }) == 0.0);
    }
    SUBCASE("secant scaling") {
        TurbulencePath a = base;
        TurbulencePath b = base;
        a.zenith_angle_rad = 0;
        b.zenith_angle_rad = 60 * kDeg;
        CHECK(rytov_variance(b) / rytov_variance(a) == doctest::Approx(std::pow(2.0, 11.0 / 6.0)).epsilon(1e-10));
    }
    SUBCASE("monotone in zenith and wind") {
        double prev = 0;
        for (double z : {0.0, 20.0, 45.0, 70.0, 80.0, 88.0}) {
            TurbulencePath p = base;
            p.zenith_angle_rad = z * kDeg;
            const double r = rytov_variance(p);
            CHECK(r > prev);
            prev = r;
        }
        prev = 0;
        for (double w : {0.0, 10.0, 21.0, 30.0, 65.0}) {
            TurbulencePath p = base;
            p.wind_speed_mps = w;
            const double r = rytov_variance(p);
            CHECK(r > prev);
            prev = r;
        }
    }
    SUBCASE("higher receiver sees less turbulence") {
        TurbulencePath lo = satellite_path();
        TurbulencePath hi = lo;
        hi.receiver_altitude_m = 20000;
        CHECK(rytov_variance(hi) < rytov_variance(lo));
    }
    SUBCASE("integral splits additively") {
        auto profile = [&](double h) { return cn2_hufnagel_valley(h, base.wind_speed_mps, base.ground_cn2); };
        auto below = [&](double h) { return h < 8000 ? profile(h) : 0.0; };
        auto above = [&](double h) { return h < 8000 ? 0.0 : profile(h); };
        const double whole = rytov_path_integral(base, profile).value;
        const double split = rytov_path_integral(base, below).value + rytov_path_integral(base, above).value;
        CHECK(split == doctest::Approx(whole).epsilon(1e-8));
    }
    SUBCASE("ceiling caps the integral") {
        TurbulencePath a = satellite_path();
        TurbulencePath b = a;
        a.transmitter_altitude_m = 100e3;
        b.transmitter_altitude_m = 36000e3;
        CHECK(rytov_variance(a) == doctest::Approx(rytov_variance(b)).epsilon(1e-14));
    }
}

TEST_CASE("aperture averaging") {
    TurbulencePath p = satellite_path();
    p.aperture_diameter_m = 0.4;
    CHECK(aperture_parameter(p) == doctest::Approx(0.33920043767502584212).epsilon(1e-12));
    p.aperture_diameter_m = 0;
    CHECK(aperture_parameter(p) == 0.0);

    CHECK(scintillation_index(1.0, 0.0) == doctest::Approx(0.70643849591924189868).epsilon(1e-13));
    CHECK(scintillation_index(0.0, 0.3) == 0.0);
    double prev = scintillation_index(1.0, 0.0);
    for (double d : {0.1, 0.3, 0.6, 1.0, 3.0}) {
        const double s = scintillation_index(1.0, d);
        CHECK(s < prev);
        prev = s;
    }
    CHECK_THROWS_AS(scintillation_index(-0.1, 0.0), DomainError);
}

TEST_CASE("derived chain for the satellite downlink") {
    const TurbulenceResult r = derive_turbulence(satellite_path());
    CHECK(r.scintillation_index == doctest::Approx(0.015832178833720883705).epsilon(1e-9));
    CHECK(r.path_length_m == doctest::Approx(482000 / std::cos(70 * kDeg)).epsilon(1e-14));

    const EwParams ew = fit_ew_params(r.scintillation_index);
    CHECK(ew.alpha == doctest::Approx(1.9376284636408838355).epsilon(1e-8));
    CHECK(ew.beta == doctest::Approx(6.3369626516541425876).epsilon(1e-8));
    CHECK(ew.eta == doctest::Approx(0.96958192308592806686).epsilon(1e-8));
}

TEST_CASE("derived chain for the UAV downlink") {
    const TurbulenceResult r = derive_turbulence(uav_path());
    CHECK(r.scintillation_index == doctest::Approx(0.33702827891157388608).epsilon(1e-9));
    const EwParams ew = fit_ew_params(r.scintillation_index);
    CHECK(ew.alpha == doctest::Approx(5.0857269432500262798).epsilon(1e-8));
    CHECK(ew.beta == doctest::Approx(0.90669884486521677411).epsilon(1e-8));
    CHECK(ew.eta == doctest::Approx(0.3397495913970857665).epsilon(1e-8));
}

TEST_CASE("EW fit") {
    const EwParams ew = fit_ew_params(0.5);
    CHECK(ew.alpha == doctest::Approx(5.4448241579629721887).epsilon(1e-12));
    CHECK(ew.beta == doctest::Approx(0.74317997184020321141).epsilon(1e-12));
    CHECK(ew.eta == doctest::Approx(0.24246656532727954851).epsilon(1e-10));
    CHECK(moment(2, ew) == doctest::Approx(1.0).epsilon(1e-10));

    double prev = 0;
    for (double s : {0.01, 0.05, 0.1, 0.3, 0.6, 1.0}) {
        const double v = irradiance_variance(fit_ew_params(s));
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(fit_ew_params(0.0), DomainError);
}

TEST_CASE("path validation lists every bad field") {
    TurbulencePath p;
    p.zenith_angle_rad = 95 * kDeg;
    p.wind_speed_mps = -1;
    try {
        p.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.errors().size() == 2);
        CHECK(e.errors()[0].field == "zenith_angle");
        CHECK(e.errors()[1].field == "wind_speed");
    }
    TurbulencePath q;
    q.transmitter_altitude_m = q.receiver_altitude_m;
    CHECK_THROWS_AS(q.validate(), ValidationError);
}
