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

#include "fsosec/montecarlo.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace fsosec {
namespace {

constexpr std::uint64_t kSecrecyStream = 0x5ec7e7;
constexpr std::uint64_t kKsStream = 0x4b5;

// Squared-irradiance draw I² = η² (−ln(1 − u^{1/α}))^{2/β}, constants hoisted.
struct SquaredIrradiance {
    explicit SquaredIrradiance(const EwParams& p)
        : inv_alpha(1.0 / p.alpha), two_over_beta(2.0 / p.beta), eta2(p.eta * p.eta) {}

    double operator()(double u) const noexcept {
        const double tail = -std::expm1(std::log(u) * inv_alpha);
        return eta2 * std::pow(-std::log(tail), two_over_beta);
    }

    double inv_alpha;
    double two_over_beta;
    double eta2;
};

struct Counts {
    std::uint64_t sop_exact = 0;
    std::uint64_t sop_approximated = 0;
    std::uint64_t ppsc = 0;
};

void run_shard(const McChannels& ch, std::span<const McPoint> points, std::uint64_t seed,
               std::uint64_t first, std::uint64_t last, std::vector<Counts>& counts) {
    const SquaredIrradiance draw_d(ch.destination);
    const SquaredIrradiance draw_e(ch.eavesdropper);
    RngStream stream(seed, kSecrecyStream);
    stream.seek(first);
    for (std::uint64_t i = first; i < last; ++i) {
        const auto u = stream.next_pair();
        const double id2 = draw_d(u[0]);
        const double ie2 = draw_e(u[1]);
        for (std::size_t p = 0; p < points.size(); ++p) {
            const McPoint& pt = points[p];
            const double gd = pt.mean_snr_d * id2;
            const double ge = pt.mean_snr_e * ie2;
            counts[p].sop_exact += (1.0 + gd < pt.gamma_th * (1.0 + ge)) ? 1 : 0;
            counts[p].sop_approximated += (gd < pt.gamma_th * ge) ? 1 : 0;
            counts[p].ppsc += (gd > ge) ? 1 : 0;
        }
    }
}

} // namespace

void McConfig::validate() const {
    if (samples < kMinMcSamples) {
        throw ValidationError("mc_samples", "must be at least " + std::to_string(kMinMcSamples));
    }
    if (shards < 1) {
        throw ValidationError("mc_shards", "must be at least 1");
    }
}

McEstimate McEstimate::from_counts(std::uint64_t hits, std::uint64_t samples) {
    McEstimate e;
    e.samples = samples;
    e.hits = hits;
    const double n = static_cast<double>(samples);
    e.value = static_cast<double>(hits) / n;
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / n);
    return e;
}

std::vector<McPointEstimate> estimate_points(const McChannels& channels, std::span<const McPoint> points,
                                             const McConfig& mc) {
    mc.validate();
    channels.destination.validate();
    channels.eavesdropper.validate();
    for (const McPoint& p : points) {
        if (!(p.mean_snr_d > 0.0) || !(p.mean_snr_e > 0.0) || !(p.gamma_th >= 1.0)) {
            throw DomainError("estimate_points: invalid point");
        }
    }

    const unsigned shards = static_cast<unsigned>(std::min<std::uint64_t>(mc.shards, mc.samples));
    std::vector<std::vector<Counts>> per_shard(shards, std::vector<Counts>(points.size()));
    std::vector<std::thread> workers;
    workers.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) {
        const std::uint64_t first = mc.samples * s / shards;
        const std::uint64_t last = mc.samples * (s + 1) / shards;
        workers.emplace_back(run_shard, std::cref(channels), points, mc.seed, first, last,
                             std::ref(per_shard[s]));
    }
    for (auto& w : workers) {
        w.join();
    }

    std::vector<McPointEstimate> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        Counts total;
        for (const auto& shard : per_shard) {
            total.sop_exact += shard[p].sop_exact;
            total.sop_approximated += shard[p].sop_approximated;
            total.ppsc += shard[p].ppsc;
        }
        out[p].sop_exact = McEstimate::from_counts(total.sop_exact, mc.samples);
        out[p].sop_approximated = McEstimate::from_counts(total.sop_approximated, mc.samples);
        out[p].ppsc = McEstimate::from_counts(total.ppsc, mc.samples);
    }
    return out;
}

McPointEstimate estimate_secrecy(const SecrecyQuery& q, const McConfig& mc) {
    q.validate();
    const McPoint point{q.mean_snr_d, q.mean_snr_e, q.gamma_th};
    return estimate_points({q.ew, q.ew}, std::span(&point, 1), mc).front();
}

McEstimate estimate_sop(const SecrecyQuery& q, const McConfig& mc) { return estimate_secrecy(q, mc).sop_exact; }

McEstimate estimate_ppsc(const SecrecyQuery& q, const McConfig& mc) { return estimate_secrecy(q, mc).ppsc; }

double ks_statistic(std::span<double> draws, const EwParams& reference) {
    if (draws.empty()) {
        throw DomainError("ks_statistic: no draws");
    }
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = cdf_irradiance(draws[i], reference);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_check(const EwParams& sample_from, const EwParams& reference, std::size_t n, std::uint64_t seed) {
    if (n < kMinKsSamples) {
        throw DomainError("ks_check: n must be >= 10000");
    }
    RngStream stream(seed, kKsStream);
    std::vector<double> draws = sample(stream, n, sample_from);
    return ks_statistic(draws, reference);
}

double ks_check(const EwParams& p, std::size_t n, std::uint64_t seed) { return ks_check(p, p, n, seed); }

double ks_critical_value_1pct(std::size_t n) {
    return kKsCoefficient1Percent / std::sqrt(static_cast<double>(n));
}

} // namespace fsosec
