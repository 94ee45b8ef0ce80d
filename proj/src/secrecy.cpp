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

#include "fsosec/secrecy.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/quadrature.hpp"
#include "fsosec/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fsosec {

double threshold_from_rate(double rate, ThresholdConvention convention) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw DomainError("threshold_from_rate: rate must be nonnegative and finite");
    }
    return convention == ThresholdConvention::paper ? std::exp2(2.0 * rate) : std::exp2(rate);
}

SecrecyQuery SecrecyQuery::from_rate(const EwParams& ew, double mean_snr_d, double mean_snr_e, double rate,
                                     ThresholdConvention convention) {
    SecrecyQuery q{ew, mean_snr_d, mean_snr_e, threshold_from_rate(rate, convention)};
    q.validate();
    return q;
}

void SecrecyQuery::validate() const {
    ew.validate();
    if (!(mean_snr_d > 0.0) || !std::isfinite(mean_snr_d) || !(mean_snr_e > 0.0) ||
        !std::isfinite(mean_snr_e)) {
        throw DomainError("SecrecyQuery: mean SNRs must be positive and finite");
    }
    if (!(gamma_th >= 1.0) || !std::isfinite(gamma_th)) {
        throw DomainError("SecrecyQuery: gamma_th must be >= 1");
    }
}

namespace {

struct Tail {
    double value;
    SeriesSum sum;
};

// G(t) = −α Σ_{ρ≥1} (−1)^ρ C(α,ρ) B(1 + ρt, α) = 1 − P_SO(t).
Tail upper_series(double alpha, double t, const SeriesControl& ctl) {
    if (std::isinf(t)) {
        return {0.0, {}};
    }
    const SeriesSum s = sum_binomial_series(
        alpha, [alpha, t](double rho) { return beta_function(1.0 + rho * t, alpha); }, ctl, 1);
    return {-alpha * s.value, s};
}

double log_ratio_power(const SecrecyQuery& q, double gamma_th) {
    // log s with s = (γ_th γ̄_E/γ̄_D)^{β/2}
    return 0.5 * q.ew.beta * (std::log(gamma_th) + std::log(q.mean_snr_e) - std::log(q.mean_snr_d));
}

SeriesDiagnostics diagnostics_of(const SeriesSum& s, bool reflected) {
    SeriesDiagnostics d;
    d.terms = s.terms;
    d.tail_used = s.tail_used;
    d.reflected = reflected;
    d.dominant_index = s.dominant_index;
    return d;
}

SecrecyValue finish(double raw, SeriesDiagnostics diag) {
    diag.raw_value = raw;
    if (raw < -1e-8 || raw > 1.0 + 1e-8) {
        diag.note = "raw series value outside [0, 1] beyond 1e-8; clamped";
    }
    return {std::clamp(raw, 0.0, 1.0), std::move(diag)};
}

// Outage probability Pr[X < r] for X = γ_D γ̄_E/(γ_E γ̄_D), given log s.
SecrecyValue outage_from_log_s(double alpha, double log_s, const SeriesControl& ctl, bool complement) {
    if (log_s >= 0.0) {
        const Tail g = upper_series(alpha, std::exp(log_s), ctl);
        const double raw = complement ? g.value : 1.0 - g.value;
        return finish(raw, diagnostics_of(g.sum, false));
    }
    const Tail g = upper_series(alpha, std::exp(-log_s), ctl);
    const double raw = complement ? 1.0 - g.value : g.value;
    return finish(raw, diagnostics_of(g.sum, true));
}

double as_printed_series(const SecrecyQuery& q, double gamma_th, const SeriesControl& ctl) {
    const double alpha = q.ew.alpha;
    const double half_beta = 0.5 * q.ew.beta;
    const double eta2 = q.ew.eta * q.ew.eta;
    const double inv_e = 1.0 / (eta2 * q.mean_snr_e);
    const double th_d = gamma_th / (eta2 * q.mean_snr_d);
    auto inner = [&](double rho) {
        return sum_binomial_series(
                   alpha - 1.0,
                   [&, rho](double k) { return std::pow((k + 1.0) * inv_e + rho * th_d, -half_beta); },
                   ctl)
            .value;
    };
    const double outer = sum_binomial_series(alpha, inner, ctl).value;
    return alpha * std::pow(inv_e, half_beta) * outer;
}

} // namespace

SecrecyValue sop_closed_form(const SecrecyQuery& q, const SeriesControl& ctl, SopForm form) {
    q.validate();
    ctl.validate();
    if (form == SopForm::as_printed) {
        const double raw = as_printed_series(q, q.gamma_th, ctl);
        return finish(raw, {});
    }
    return outage_from_log_s(q.ew.alpha, log_ratio_power(q, q.gamma_th), ctl, false);
}

SecrecyValue ppsc_closed_form(const SecrecyQuery& q, const SeriesControl& ctl, SopForm form) {
    q.validate();
    ctl.validate();
    if (form == SopForm::as_printed) {
        const double raw = 1.0 - as_printed_series(q, 1.0, ctl);
        return finish(raw, {});
    }
    return outage_from_log_s(q.ew.alpha, log_ratio_power(q, 1.0), ctl, true);
}

double sop_double_series(const SecrecyQuery& q, const SeriesControl& ctl) {
    q.validate();
    ctl.validate();
    const double alpha = q.ew.alpha;
    const double s = std::exp(log_ratio_power(q, q.gamma_th));
    auto inner = [&](double rho) {
        return sum_binomial_series(
                   alpha - 1.0, [&, rho](double k) { return 1.0 / ((k + 1.0) + rho * s); }, ctl)
            .value;
    };
    return alpha * sum_binomial_series(alpha, inner, ctl).value;
}

double sop_by_quadrature(const SecrecyQuery& q, SopEvent event) {
    q.validate();
    const SnrChannel dest{q.ew, q.mean_snr_d};
    const SnrChannel eve{q.ew, q.mean_snr_e};
    const double th = q.gamma_th;
    auto integrand = [&](double gamma) {
        if (!(gamma > 0.0)) {
            return 0.0;
        }
        const double g = event == SopEvent::approximated ? th * gamma : th * gamma + th - 1.0;
        return cdf_snr(g, dest) * pdf_snr(gamma, eve);
    };
    // Split around the eavesdropper's SNR scale so both the body and the
    // heavy or light tail get their own adaptive budget.
    const double scale = q.ew.eta * q.ew.eta * q.mean_snr_e;
    QuadratureOptions opts;
    opts.rel_tolerance = 1e-13;
    opts.abs_tolerance = 1e-15;
    opts.max_intervals = 8000;
    const double breaks[] = {0.0, 1e-4 * scale, 1e-2 * scale, scale};
    double total = 0.0;
    for (int i = 0; i + 1 < 4; ++i) {
        total += integrate(integrand, breaks[i], breaks[i + 1], opts).value;
    }
    total += integrate_to_infinity(integrand, scale, opts).value;
    return total;
}

} // namespace fsosec
