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

#include "fsosec/rng.hpp"
#include "fsosec/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fsosec {

/// Exponentiated-Weibull fading triple: shapes alpha, beta and scale eta.
struct EwParams {
    double alpha = 1.0;
    double beta = 1.0;
    double eta = 1.0;

    void validate() const;
    friend bool operator==(const EwParams&, const EwParams&) = default;
};

/// Which irradiance moment is pinned to one when solving for eta.
enum class Normalization {
    unit_second_moment, // E[I^2] = 1, so that gamma = mean_snr * I^2 has mean mean_snr
    unit_mean,          // E[I] = 1, the convention of the EW fitting literature
};

/// SNR-domain channel gamma = mean_snr * I^2 with I ~ EW(alpha, beta, eta).
struct SnrChannel {
    EwParams ew;
    double mean_snr = 1.0; // linear

    void validate() const;
};

enum class CdfMode { exact, series };

double pdf_irradiance(double irradiance, const EwParams& p);
double cdf_irradiance(double irradiance, const EwParams& p);

/// Irradiance quantile: eta (−ln(1 − u^{1/alpha}))^{1/beta}, u in (0, 1).
double quantile(double u, const EwParams& p);

/// SNR CDF. `series` sums the generalized-binomial expansion
/// Σ_ρ C(α,ρ)(−1)^ρ exp[−ρ (γ/(η²γ̄))^{β/2}] under `ctl`.
double cdf_snr(double gamma, const SnrChannel& ch, CdfMode mode = CdfMode::exact,
               const SeriesControl& ctl = {});

/// Single term ρ of the SNR CDF series.
double cdf_snr_series_term(int rho, double gamma, const SnrChannel& ch);

/// SNR density as the analytic derivative of the exact CDF.
double pdf_snr(double gamma, const SnrChannel& ch);

/// SNR density from its binomial series in k (exponent (k+1) per term).
double pdf_snr_series(double gamma, const SnrChannel& ch, const SeriesControl& ctl = {});

/// E[I^n] from the EW moment series.
double moment(int n, const EwParams& p, const SeriesControl& ctl = {});

/// E[I^n] by adaptive quadrature of I^n times the density.
double moment_by_quadrature(int n, const EwParams& p);

/// Scale eta that pins the selected moment to one for the given shapes.
EwParams normalize_eta(double alpha, double beta,
                       Normalization target = Normalization::unit_second_moment,
                       const SeriesControl& ctl = {});

/// Inverse-transform draws. Consumes one uniform per draw from `stream`.
void sample(RngStream& stream, const EwParams& p, std::span<double> out);
std::vector<double> sample(RngStream& stream, std::size_t n, const EwParams& p);

} // namespace fsosec
