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
#include "fsosec/secrecy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fsosec {

struct McConfig {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    unsigned shards = 1;

    void validate() const;
};

inline constexpr std::uint64_t kMinMcSamples = 1000;

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;

    static McEstimate from_counts(std::uint64_t hits, std::uint64_t samples);
};

/// Fading laws for the two receivers. The closed forms need them equal; the
/// simulator does not.
struct McChannels {
    EwParams destination;
    EwParams eavesdropper;
};

struct McPoint {
    double mean_snr_d = 1.0; // linear
    double mean_snr_e = 1.0; // linear
    double gamma_th = 1.0;
};

/// Every event is counted on the same draws.
struct McPointEstimate {
    McEstimate sop_exact;        // 1 + γ_D < γ_th (1 + γ_E)
    McEstimate sop_approximated; // γ_D < γ_th γ_E, the event the closed form integrates
    McEstimate ppsc;             // γ_D > γ_E
};

/// One pass over `mc.samples` draw pairs, scoring every point. Draw i uses
/// block i of the secrecy stream for `mc.seed`, so results do not depend on
/// the shard count.
std::vector<McPointEstimate> estimate_points(const McChannels& channels, std::span<const McPoint> points,
                                             const McConfig& mc);

McPointEstimate estimate_secrecy(const SecrecyQuery& q, const McConfig& mc);

/// Frequency of the exact outage event log2(1+γ_D) − log2(1+γ_E) < log2 γ_th.
McEstimate estimate_sop(const SecrecyQuery& q, const McConfig& mc);

McEstimate estimate_ppsc(const SecrecyQuery& q, const McConfig& mc);

/// One-sample Kolmogorov–Smirnov statistic of `draws` (sorted in place) against cdf_irradiance.
double ks_statistic(std::span<double> draws, const EwParams& reference);

/// KS statistic of n draws from `p` tested against `p` itself.
double ks_check(const EwParams& p, std::size_t n, std::uint64_t seed);

/// KS statistic of n draws from `sample_from` tested against `reference`.
double ks_check(const EwParams& sample_from, const EwParams& reference, std::size_t n, std::uint64_t seed);

/// Asymptotic 1% critical value of the KS statistic, c/√n.
inline constexpr double kKsCoefficient1Percent = 1.63;
double ks_critical_value_1pct(std::size_t n);

inline constexpr std::size_t kMinKsSamples = 10000;

} // namespace fsosec
