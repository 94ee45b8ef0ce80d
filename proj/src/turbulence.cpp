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

#include "fsosec/turbulence.hpp"

#include "fsosec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace fsosec {

void TurbulencePath::validate() const {
    std::vector<FieldError> errs;
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m)) {
        errs.push_back({"wavelength", "must be positive"});
    }
    const double max_zenith = kMaxZenithDeg * std::numbers::pi / 180.0;
    if (!(zenith_angle_rad >= 0.0 && zenith_angle_rad < max_zenith)) {
        errs.push_back({"zenith_angle", "must lie in [0, 89) degrees"});
    }
    if (!(wind_speed_mps >= 0.0) || !std::isfinite(wind_speed_mps)) {
        errs.push_back({"wind_speed", "must be nonnegative"});
    }
    if (!(ground_cn2 >= 0.0) || !std::isfinite(ground_cn2)) {
        errs.push_back({"ground_cn2", "must be nonnegative"});
    }
    if (!(receiver_altitude_m >= 0.0) || !std::isfinite(receiver_altitude_m)) {
        errs.push_back({"receiver_altitude", "must be nonnegative"});
    }
    if (!(transmitter_altitude_m > receiver_altitude_m) || !std::isfinite(transmitter_altitude_m)) {
        errs.push_back({"transmitter_altitude", "must exceed the receiver altitude"});
    }
    if (!(aperture_diameter_m >= 0.0) || !std::isfinite(aperture_diameter_m)) {
        errs.push_back({"aperture_diameter", "must be nonnegative"});
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

double cn2_hufnagel_valley(double altitude_m, double wind_speed_mps, double ground_cn2) {
    if (!(altitude_m >= 0.0)) {
        throw DomainError("cn2_hufnagel_valley: altitude must be nonnegative");
    }
    const double h = altitude_m;
    const double wind_ratio = wind_speed_mps / 27.0;
    return 0.00594 * wind_ratio * wind_ratio * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0) +
           2.7e-16 * std::exp(-h / 1500.0) + ground_cn2 * std::exp(-h / 100.0);
}

QuadratureResult rytov_path_integral(const TurbulencePath& path, const Cn2Profile& profile) {
    path.validate();
    const double h0 = path.receiver_altitude_m;
    const double top = std::min(path.transmitter_altitude_m, kTurbulenceCeilingM);
    if (top <= h0) {
        return {};
    }
    auto integrand = [&](double h) { return profile(h) * std::pow(std::max(h - h0, 0.0), 5.0 / 6.0); };
    QuadratureOptions opts;
    opts.rel_tolerance = 1e-10;
    opts.max_intervals = 4000;
    return integrate(integrand, h0, top, opts);
}

double rytov_variance(const TurbulencePath& path, const Cn2Profile& profile) {
    const double integral = rytov_path_integral(path, profile).value;
    const double k = 2.0 * std::numbers::pi / path.wavelength_m;
    const double sec = 1.0 / std::cos(path.zenith_angle_rad);
    return 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * integral;
}

double rytov_variance(const TurbulencePath& path) {
    return rytov_variance(path, [&path](double h) {
        return cn2_hufnagel_valley(h, path.wind_speed_mps, path.ground_cn2);
    });
}

double slant_path_length_m(const TurbulencePath& path) {
    path.validate();
    return (path.transmitter_altitude_m - path.receiver_altitude_m) / std::cos(path.zenith_angle_rad);
}

double aperture_parameter(const TurbulencePath& path) {
    const double length = slant_path_length_m(path);
    const double k = 2.0 * std::numbers::pi / path.wavelength_m;
    const double diameter = path.aperture_diameter_m;
    return std::sqrt(k * diameter * diameter / (4.0 * length));
}

double scintillation_index(double rytov, double aperture_param) {
    if (!(rytov >= 0.0) || !(aperture_param >= 0.0)) {
        throw DomainError("scintillation_index: arguments must be nonnegative");
    }
    const double s = rytov;
    const double s125 = std::pow(s, 6.0 / 5.0); // σ_R^{12/5}
    const double d2 = aperture_param * aperture_param;
    const double large_scale = 0.49 * s / std::pow(1.0 + 0.65 * d2 + 1.11 * s125, 7.0 / 6.0);
    const double small_scale =
        0.51 * s * std::pow(1.0 + 0.69 * s125, -5.0 / 6.0) / (1.0 + 0.90 * d2 + 0.62 * d2 * s125);
    return std::expm1(large_scale + small_scale);
}

TurbulenceResult derive_turbulence(const TurbulencePath& path) {
    TurbulenceResult r;
    r.rytov_variance = rytov_variance(path);
    r.path_length_m = slant_path_length_m(path);
    r.aperture_parameter = aperture_parameter(path);
    r.scintillation_index = scintillation_index(r.rytov_variance, r.aperture_parameter);
    return r;
}

EwParams fit_ew_params(double scintillation, Normalization target, const SeriesControl& ctl) {
    if (!(scintillation > 0.0) || !std::isfinite(scintillation)) {
        throw DomainError("fit_ew_params: scintillation index must be positive");
    }
    using namespace ew_fit;
    const double alpha = kAlphaScale * std::cbrt(scintillation) /
                         std::tgamma(kGammaArgScale * std::pow(scintillation, 1.0 / 6.0) + kGammaArgOffset);
    const double beta = kBetaScale * std::pow(alpha * scintillation, kBetaExponent) + kBetaOffset;
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("fit_ew_params: fitted shape parameters are not positive");
    }
    return normalize_eta(alpha, beta, target, ctl);
}

} // namespace fsosec
