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

#include "fsosec/quadrature.hpp"

#include "fsosec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fsosec {
namespace {

// Kronrod abscissae; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);

    double result_gauss = f_center * kWg[3];
    double result_kronrod = f_center * kWgk[7];
    double result_abs = std::abs(result_kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        result_kronrod += kWgk[j] * sum;
        result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * sum;
        }
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    result_kronrod *= half;
    result_gauss *= half;
    result_abs *= std::abs(half);
    result_asc *= std::abs(half);

    double error = std::abs(result_kronrod - result_gauss);
    if (result_asc != 0.0 && error != 0.0) {
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double roundoff = 50.0 * eps * result_abs;
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        error = std::max(roundoff, error);
    }
    return {a, b, result_kronrod, error};
}

} // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: limits must be finite");
    }
    if (opts.max_intervals < 1 || opts.rel_tolerance < 0.0 || opts.abs_tolerance < 0.0) {
        throw DomainError("integrate: invalid options");
    }
    QuadratureResult out;
    if (a == b) {
        return out;
    }

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod_15(f, a, b);
    out.evaluations = 15;
    double total = first.value;
    double total_error = first.error;
    heap.push(first);

    auto done = [&] {
        return total_error <= std::max(opts.abs_tolerance, opts.rel_tolerance * std::abs(total));
    };

    while (!done()) {
        if (static_cast<int>(heap.size()) >= opts.max_intervals) {
            throw QuadratureError("integrate: interval budget exhausted before tolerance", total,
                                  total_error);
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
            throw QuadratureError("integrate: interval collapsed to machine precision", total,
                                  total_error);
        }
        heap.pop();
        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the segments to shed the drift of incremental updates.
    double value = 0.0;
    double error = 0.0;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.abs_error = error;
    if (!std::isfinite(out.value)) {
        throw QuadratureError("integrate: non-finite integrand value", out.value, out.abs_error);
    }
    return out;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts) {
    auto mapped = [&f, a](double t) {
        const double one_minus = 1.0 - t;
        const double x = a + t / one_minus;
        if (!std::isfinite(x)) {
            return 0.0;
        }
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

} // namespace fsosec
