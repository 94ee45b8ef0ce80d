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

namespace fsosec {

/// log|Γ(x)| together with the sign of Γ(x). Throws DomainError at the poles.
struct SignedLog {
    double log_abs;
    int sign;
};

SignedLog log_gamma_signed(double x);

/// Generalized binomial coefficient C(a, n) = Γ(a+1) / (Γ(n+1) Γ(a−n+1)) for real a.
///
/// Integer a uses the exact product form, so C(a, n) is exactly zero for
/// nonnegative integer a and n > a. Non-integer a goes through signed
/// log-gamma; the sign of Γ(a−n+1) alternates once a−n+1 drops below zero.
double binom_real(double a, int n);

/// Real continuation of (−1)^n C(a, n) for x > a and non-integer a:
/// Γ(x−a) / (Γ(−a) Γ(x+1)). Agrees with the integer-index form at x = n.
double alternating_binom_continued(double a, double x);

/// Euler beta function B(a, b) for a, b > 0.
double beta_function(double a, double b);

bool is_integer(double x) noexcept;

} // namespace fsosec
