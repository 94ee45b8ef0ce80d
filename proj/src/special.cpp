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

#include "fsosec/special.hpp"

#include "fsosec/errors.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace fsosec {

bool is_integer(double x) noexcept { return std::isfinite(x) && std::floor(x) == x; }

SignedLog log_gamma_signed(double x) {
    if (!std::isfinite(x) || (x <= 0.0 && is_integer(x))) {
        throw DomainError("log_gamma_signed: pole or non-finite argument " + std::to_string(x));
    }
    int sign = 1;
    const double value = boost::math::lgamma(x, &sign);
    return {value, sign};
}

double binom_real(double a, int n) {
    if (n < 0) {
        throw DomainError("binom_real: negative index");
    }
    if (!std::isfinite(a)) {
        throw DomainError("binom_real: non-finite upper argument");
    }
    if (n == 0) {
        return 1.0;
    }
    if (is_integer(a)) {
        if (a >= 0.0 && n > a) {
            return 0.0;
        }
        double r = 1.0;
        for (int i = 1; i <= n; ++i) {
            r = r * (a - i + 1) / i;
        }
        return r;
    }
    // a+1 and a−n+1 are both non-integers here, so neither hits a pole.
    const SignedLog num = log_gamma_signed(a + 1.0);
    const SignedLog den = log_gamma_signed(a - n + 1.0);
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs - log_n_fact);
}

double alternating_binom_continued(double a, double x) {
    if (is_integer(a) && a >= 0.0) {
        throw DomainError("alternating_binom_continued: terminating series has no continuation");
    }
    if (!(x > a)) {
        throw DomainError("alternating_binom_continued: requires x > a");
    }
    // Γ(x−a)/Γ(x+1) without forming either factor.
    const double ratio = boost::math::tgamma_delta_ratio(x - a, a + 1.0);
    return ratio / boost::math::tgamma(-a);
}

double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("beta_function: arguments must be positive");
    }
    return boost::math::beta(a, b);
}

} // namespace fsosec
