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

#include "fsosec/ew_channel.hpp"
#include "fsosec/series.hpp"

#include <string>

namespace fsosec {

/// How a secrecy rate maps to the SNR-ratio threshold γ_th.
enum class ThresholdConvention {
    paper,   // γ_th = 2^{2 R_s}
    shannon, // γ_th = 2^{R_s}, matching log2(1+γ_D) − log2(1+γ_E) < R_s
};

double threshold_from_rate(double rate, ThresholdConvention convention = ThresholdConvention::paper);

/// Destination and eavesdropper share one fading triple; only the mean SNRs differ.
struct SecrecyQuery {
    EwParams ew;
    double mean_snr_d = 1.0; // linear
    double mean_snr_e = 1.0; // linear
    double gamma_th = 1.0;

    static SecrecyQuery from_rate(const EwParams& ew, double mean_snr_d, double mean_snr_e, double rate,
                                  ThresholdConvention convention = ThresholdConvention::paper);
    void validate() const;
};

enum class SopForm {
    derived,    // exact term-wise integration of the CDF×PDF double series
    as_printed, // bracket raised to −β/2 as typeset; comparison only
};

struct SeriesDiagnostics {
    int terms = 0;
    bool tail_used = false;
    bool reflected = false; // evaluated through SOP(s) = 1 − SOP(1/s)
    int dominant_index = 0;
    double raw_value = 0.0;
    std::string note; // set when the raw value strays outside [−1e-8, 1 + 1e-8]
};

struct SecrecyValue {
    double value = 0.0;
    SeriesDiagnostics diagnostics;
};

/// Secrecy outage probability Pr[γ_D < γ_th γ_E].
///
/// With s = (γ_th γ̄_E/γ̄_D)^{β/2} the double series collapses term-wise to
///   P_SO(s) = α Σ_ρ Σ_k (−1)^{ρ+k} C(α,ρ) C(α−1,k) / ((k+1) + ρ s).
/// The inner k sum is B(1 + ρ s, α). Because γ_D/γ_E is ratio-symmetric,
/// P_SO(s) = 1 − P_SO(1/s); the evaluator always expands around the larger
/// of s and 1/s so small outage probabilities keep their relative accuracy.
SecrecyValue sop_closed_form(const SecrecyQuery& q, const SeriesControl& ctl = {},
                             SopForm form = SopForm::derived);

/// Pr[γ_D > γ_E] = 1 − P_SO at γ_th = 1.
SecrecyValue ppsc_closed_form(const SecrecyQuery& q, const SeriesControl& ctl = {},
                              SopForm form = SopForm::derived);

/// The derived double series summed term by term over both ρ and k, with no
/// inner closed form and no reflection.
double sop_double_series(const SecrecyQuery& q, const SeriesControl& ctl = {});

enum class SopEvent {
    approximated, // γ_D < γ_th γ_E
    exact,        // 1 + γ_D < γ_th (1 + γ_E)
};

/// ∫ F_{γ_D}(g(γ)) f_{γ_E}(γ) dγ by adaptive quadrature of the exact CDF and PDF.
double sop_by_quadrature(const SecrecyQuery& q, SopEvent event = SopEvent::approximated);

} // namespace fsosec
