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
#include "fsosec/special.hpp"

#include <cmath>

using namespace fsosec;

namespace {

// a(a−1)…(a−n+1)/n!
double binom_product(double a, int n) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
        v *= (a - i) / (i + 1);
    }
    return v;
}

} // namespace

TEST_CASE("binom_real integer cases") {
    CHECK(binom_real(5, 2) == 10.0);
    CHECK(binom_real(5, 5) == 1.0);
    CHECK(binom_real(5, 6) == 0.0);
    CHECK(binom_real(3, 40) == 0.0);
    CHECK(binom_real(-1, 3) == -1.0);
    for (double a : {-3.7, 0.0, 0.5, 2.5, 7.0, 11.3}) {
        CHECK(binom_real(a, 0) == 1.0);
    }
}

TEST_CASE("binom_real matches the product formula") {
    CHECK(binom_real(2.5, 4) == doctest::Approx(-0.0390625).epsilon(1e-14));
    for (double a : {0.3, 1.5, 2.5, 4.9, 5.8, -0.7, -2.25}) {
        for (int n = 0; n < 40; ++n) {
            const double want = binom_product(a, n);
            CHECK(binom_real(a, n) == doctest::Approx(want).epsilon(1e-12).scale(0));
            CHECK(std::signbit(binom_real(a, n)) == std::signbit(want));
        }
    }
}

TEST_CASE("signed log-gamma") {
    const SignedLog g = log_gamma_signed(-0.5); // Γ(−1/2) = −2√π
    CHECK(g.sign == -1);
    CHECK(g.log_abs == doctest::Approx(std::log(2.0 * std::sqrt(M_PI))).epsilon(1e-14));
    CHECK(log_gamma_signed(-1.5).sign == 1);
    CHECK(log_gamma_signed(6.0).log_abs == doctest::Approx(std::log(120.0)));
    CHECK_THROWS_AS(log_gamma_signed(-2.0), DomainError);
    CHECK_THROWS_AS(log_gamma_signed(0.0), DomainError);
}

TEST_CASE("continued alternating binomial agrees at integers") {
    for (double a : {0.5, 2.5, 5.8, 1.9}) {
        for (int n = static_cast<int>(std::ceil(a)) + 1; n < 30; ++n) {
            const double want = (n % 2 ? -1.0 : 1.0) * binom_product(a, n);
            CHECK(alternating_binom_continued(a, n) == doctest::Approx(want).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(alternating_binom_continued(3.0, 5.0), DomainError);
}

TEST_CASE("beta function") {
    CHECK(beta_function(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(beta_function(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(is_integer(4.0));
    CHECK_FALSE(is_integer(4.5));
}
