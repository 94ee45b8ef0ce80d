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

#pragma once

#include <functional>

namespace fsosec {

struct QuadratureOptions {
    double abs_tolerance = 0.0;
    double rel_tolerance = 1e-10;
    int max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss–Kronrod quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tolerance, rel_tolerance·|value|). Running out
/// of intervals throws QuadratureError carrying the best value reached.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts = {});

/// ∫_a^∞ f via the map x = a + t/(1−t) onto [0, 1).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts = {});

} // namespace fsosec
