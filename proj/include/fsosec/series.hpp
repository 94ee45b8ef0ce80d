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

/// Truncation contract shared by every series evaluator.
struct SeriesControl {
    double rel_tolerance = 1e-12;
    int max_terms_per_index = 500;

    void validate() const;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }
    double abs_sum() const noexcept { return abs_sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
    double abs_sum_ = 0.0;
};

struct SeriesSum {
    double value = 0.0;
    int terms = 0;          // explicitly summed terms
    bool tail_used = false; // Euler–Maclaurin remainder added
    double tail = 0.0;
    int dominant_index = 0; // index of the largest-magnitude term
    double abs_sum = 0.0;   // Σ|term|, for cancellation diagnostics
};

/// Σ_{n ≥ start} (−1)^n C(a, n) w(n) for real a.
///
/// Nonnegative integer a terminates at n = a and is summed exactly. Otherwise
/// the terms eventually keep one sign and decay algebraically, so plain
/// truncation converges too slowly. The head is summed explicitly and the tail
/// is estimated by Euler–Maclaurin on the real continuation of the summand;
/// the cut point doubles until two successive estimates agree to
/// rel_tolerance. Reaching max_terms_per_index first throws SeriesNotConverged.
///
/// `weight` must be smooth and finite for real x ≥ start.
SeriesSum sum_binomial_series(double a, const std::function<double(double)>& weight,
                              const SeriesControl& ctl, int start = 0);

} // namespace fsosec
