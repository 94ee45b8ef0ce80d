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

#include "fsosec/series.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/quadrature.hpp"
#include "fsosec/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fsosec {

void SeriesControl::validate() const {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0)) {
        throw DomainError("SeriesControl: rel_tolerance must lie in (0, 1)");
    }
    if (max_terms_per_index < 1) {
        throw DomainError("SeriesControl: max_terms_per_index must be >= 1");
    }
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
}

namespace {

double sign_of_index(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct Head {
    CompensatedSum sum;
    int next = 0;
    int dominant_index = 0;
    double dominant = -1.0;
};

void extend_head(Head& head, double a, const std::function<double(double)>& weight, int upto) {
    for (; head.next < upto; ++head.next) {
        const int n = head.next;
        const double t = sign_of_index(n) * binom_real(a, n) * weight(static_cast<double>(n));
        if (!std::isfinite(t)) {
            throw DomainError("sum_binomial_series: non-finite term at index " + std::to_string(n));
        }
        if (std::abs(t) > head.dominant) {
            head.dominant = std::abs(t);
            head.dominant_index = n;
        }
        head.sum.add(t);
    }
}

// Σ_{n ≥ cut} h(n) ≈ ∫_cut^∞ h + h(cut)/2 − h'(cut)/12 + h'''(cut)/720.
double euler_maclaurin_tail(const std::function<double(double)>& h, double cut, double abs_tol) {
    QuadratureOptions opts;
    opts.rel_tolerance = 1e-13;
    opts.abs_tolerance = abs_tol;
    opts.max_intervals = 2000;
    // Geometric panels first: the summand may decay algebraically out to a
    // scale set by the weight, which a single mapped interval resolves poorly.
    CompensatedSum integral;
    try {
        double lo = cut;
        for (int panel = 0; panel < 64; ++panel) {
            const double hi = 2.0 * lo;
            const double piece = integrate(h, lo, hi, opts).value;
            integral.add(piece);
            lo = hi;
            if (std::abs(piece) <= 1e-3 * abs_tol) {
                break;
            }
        }
        integral.add(integrate_to_infinity(h, lo, opts).value);
    } catch (const QuadratureError& e) {
        throw SeriesNotConverged(std::string("sum_binomial_series: tail integral failed: ") + e.what(),
                                 static_cast<int>(cut), e.value());
    }

    constexpr double d = 0.25;
    const double hp1 = h(cut + d);
    const double hm1 = h(cut - d);
    const double hp2 = h(cut + 2 * d);
    const double hm2 = h(cut - 2 * d);
    const double first = (8 * (hp1 - hm1) - (hp2 - hm2)) / (12 * d);
    const double third = (hp2 - 2 * hp1 + 2 * hm1 - hm2) / (2 * d * d * d);
    return integral.value() + 0.5 * h(cut) - first / 12.0 + third / 720.0;
}

} // namespace

SeriesSum sum_binomial_series(double a, const std::function<double(double)>& weight,
                              const SeriesControl& ctl, int start) {
    ctl.validate();
    if (start < 0) {
        throw DomainError("sum_binomial_series: negative start index");
    }

    Head head;
    head.next = start;
    SeriesSum out;

    if (is_integer(a) && a >= 0.0) {
        const int last = static_cast<int>(a);
        if (last + 1 > ctl.max_terms_per_index) {
            throw SeriesNotConverged("sum_binomial_series: terminating series longer than term cap",
                                     ctl.max_terms_per_index, 0.0);
        }
        extend_head(head, a, weight, std::max(start, last + 1));
        out.value = head.sum.value();
        out.terms = std::max(0, last + 1 - start);
        out.dominant_index = head.dominant_index;
        out.abs_sum = head.sum.abs_sum();
        return out;
    }

    auto continued = [&](double x) { return alternating_binom_continued(a, x) * weight(x); };

    // The continuation is smooth once x − a ≥ 1 (away from the Γ(x−a) pole).
    const int smooth_from = static_cast<int>(std::floor(a)) + 2;
    int cut = std::max({start, smooth_from, 16});
    if (cut > ctl.max_terms_per_index) {
        throw SeriesNotConverged("sum_binomial_series: term cap below the regular regime", 0, 0.0);
    }

    extend_head(head, a, weight, cut);
    // Alternating terms of size O(abs_sum) cannot resolve a result much below
    // eps * abs_sum, so convergence is also accepted at that absolute level.
    auto cancellation_floor = [&] {
        return std::max(16.0 * std::numeric_limits<double>::epsilon() * head.sum.abs_sum(), 1e-300);
    };
    auto tail_abs_tol = [&] {
        return 1e-3 * ctl.rel_tolerance * std::max(std::abs(head.sum.value()), cancellation_floor());
    };
    double tail = euler_maclaurin_tail(continued, cut, tail_abs_tol());
    double estimate = head.sum.value() + tail;

    while (true) {
        const int next_cut = std::min(2 * cut, ctl.max_terms_per_index);
        if (next_cut <= cut) {
            throw SeriesNotConverged("sum_binomial_series: term cap reached before tolerance", cut,
                                     estimate);
        }
        extend_head(head, a, weight, next_cut);
        const double next_tail = euler_maclaurin_tail(continued, next_cut, tail_abs_tol());
        const double next_estimate = head.sum.value() + next_tail;
        const double change = std::abs(next_estimate - estimate);
        cut = next_cut;
        tail = next_tail;
        estimate = next_estimate;
        if (change <= ctl.rel_tolerance * std::abs(next_estimate) ||
            change <= cancellation_floor()) {
            break;
        }
    }

    out.value = estimate;
    out.terms = cut - start;
    out.tail_used = true;
    out.tail = tail;
    out.dominant_index = head.dominant_index;
    out.abs_sum = head.sum.abs_sum() + std::abs(tail);
    return out;
}

} // namespace fsosec
