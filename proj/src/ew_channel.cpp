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

#include "fsosec/ew_channel.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/quadrature.hpp"
#include "fsosec/special.hpp"

#include <cmath>
#include <string>

namespace fsosec {
namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// (γ/(η²γ̄))^{β/2}: the Weibull argument in the SNR domain.
double snr_argument(double gamma, const SnrChannel& ch) {
    return std::pow(gamma / (ch.ew.eta * ch.ew.eta * ch.mean_snr), 0.5 * ch.ew.beta);
}

void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0) || std::isnan(x)) {
        throw DomainError(std::string(what) + ": argument must be nonnegative");
    }
}

} // namespace

void EwParams::validate() const {
    if (!positive_finite(alpha) || !positive_finite(beta) || !positive_finite(eta)) {
        throw DomainError("EwParams: alpha, beta and eta must be positive and finite");
    }
}

void SnrChannel::validate() const {
    ew.validate();
    if (!positive_finite(mean_snr)) {
        throw DomainError("SnrChannel: mean_snr must be positive and finite");
    }
}

double pdf_irradiance(double irradiance, const EwParams& p) {
    p.validate();
    require_nonnegative(irradiance, "pdf_irradiance");
    const double x = irradiance / p.eta;
    const double u = std::pow(x, p.beta);
    return p.alpha * p.beta / p.eta * std::pow(x, p.beta - 1.0) * std::exp(-u) *
           std::pow(-std::expm1(-u), p.alpha - 1.0);
}

double cdf_irradiance(double irradiance, const EwParams& p) {
    p.validate();
    require_nonnegative(irradiance, "cdf_irradiance");
    const double u = std::pow(irradiance / p.eta, p.beta);
    return std::pow(-std::expm1(-u), p.alpha);
}

double quantile(double u, const EwParams& p) {
    p.validate();
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("quantile: probability must lie in (0, 1)");
    }
    // 1 − u^{1/α} = −expm1(ln(u)/α), accurate when u^{1/α} is close to one.
    const double tail = -std::expm1(std::log(u) / p.alpha);
    return p.eta * std::pow(-std::log(tail), 1.0 / p.beta);
}

double cdf_snr(double gamma, const SnrChannel& ch, CdfMode mode, const SeriesControl& ctl) {
    ch.validate();
    require_nonnegative(gamma, "cdf_snr");
    const double z = snr_argument(gamma, ch);
    if (mode == CdfMode::exact) {
        return std::pow(-std::expm1(-z), ch.ew.alpha);
    }
    return sum_binomial_series(ch.ew.alpha, [z](double rho) { return std::exp(-rho * z); }, ctl)
        .value;
}

double cdf_snr_series_term(int rho, double gamma, const SnrChannel& ch) {
    ch.validate();
    require_nonnegative(gamma, "cdf_snr_series_term");
    if (rho < 0) {
        throw DomainError("cdf_snr_series_term: negative index");
    }
    const double z = snr_argument(gamma, ch);
    const double sign = (rho % 2 == 0) ? 1.0 : -1.0;
    return sign * binom_real(ch.ew.alpha, rho) * std::exp(-rho * z);
}

double pdf_snr(double gamma, const SnrChannel& ch) {
    ch.validate();
    if (!(gamma > 0.0)) {
        throw DomainError("pdf_snr: gamma must be positive");
    }
    const double z = snr_argument(gamma, ch);
    return ch.ew.alpha * ch.ew.beta / (2.0 * gamma) * z * std::exp(-z) *
           std::pow(-std::expm1(-z), ch.ew.alpha - 1.0);
}

double pdf_snr_series(double gamma, const SnrChannel& ch, const SeriesControl& ctl) {
    ch.validate();
    if (!(gamma > 0.0)) {
        throw DomainError("pdf_snr_series: gamma must be positive");
    }
    const double z = snr_argument(gamma, ch);
    const double prefactor = ch.ew.alpha * ch.ew.beta / (2.0 * gamma) * z;
    const double sum =
        sum_binomial_series(ch.ew.alpha - 1.0, [z](double k) { return std::exp(-(k + 1.0) * z); },
                            ctl)
            .value;
    return prefactor * sum;
}

double moment(int n, const EwParams& p, const SeriesControl& ctl) {
    p.validate();
    if (n < 1) {
        throw DomainError("moment: order must be >= 1");
    }
    const double s = 1.0 + n / p.beta;
    const double sum =
        sum_binomial_series(p.alpha - 1.0, [s](double j) { return std::pow(j + 1.0, -s); }, ctl)
            .value;
    return p.alpha * std::pow(p.eta, n) * std::tgamma(s) * sum;
}

double moment_by_quadrature(int n, const EwParams& p) {
    p.validate();
    if (n < 1) {
        throw DomainError("moment_by_quadrature: order must be >= 1");
    }
    // Substituting x = (I/η)^β: E[I^n] = η^n α ∫ x^{n/β} e^{−x} (1 − e^{−x})^{α−1} dx.
    const double power = n / p.beta;
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return 0.0;
        }
        return std::pow(x, power) * std::exp(-x) * std::pow(-std::expm1(-x), p.alpha - 1.0);
    };
    QuadratureOptions opts;
    opts.rel_tolerance = 1e-13;
    const double head = integrate(integrand, 0.0, 1.0, opts).value;
    const double tail = integrate_to_infinity(integrand, 1.0, opts).value;
    return std::pow(p.eta, n) * p.alpha * (head + tail);
}

EwParams normalize_eta(double alpha, double beta, Normalization target, const SeriesControl& ctl) {
    EwParams unit{alpha, beta, 1.0};
    unit.validate();
    // E[I^n] scales as η^n, so the root in η is explicit.
    if (target == Normalization::unit_second_moment) {
        unit.eta = 1.0 / std::sqrt(moment(2, unit, ctl));
    } else {
        unit.eta = 1.0 / moment(1, unit, ctl);
    }
    return unit;
}

void sample(RngStream& stream, const EwParams& p, std::span<double> out) {
    p.validate();
    for (double& x : out) {
        x = quantile(stream.next_uniform(), p);
    }
}

std::vector<double> sample(RngStream& stream, std::size_t n, const EwParams& p) {
    if (n == 0) {
        throw DomainError("sample: n must be >= 1");
    }
    std::vector<double> out(n);
    sample(stream, p, out);
    return out;
}

} // namespace fsosec
