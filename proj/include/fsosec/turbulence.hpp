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
#include "fsosec/quadrature.hpp"

#include <functional>

namespace fsosec {

/// Downlink slant-path geometry and atmosphere. SI units throughout.
struct TurbulencePath {
    double wavelength_m = 1550e-9;
    double zenith_angle_rad = 0.0;
    double wind_speed_mps = 21.0;
    double ground_cn2 = 1.7e-14; // m^{-2/3}
    double receiver_altitude_m = 0.0;
    double transmitter_altitude_m = 20000.0;
    double aperture_diameter_m = 0.0;

    void validate() const;
};

struct TurbulenceResult {
    double rytov_variance = 0.0;
    double scintillation_index = 0.0;
    double path_length_m = 0.0;
    double aperture_parameter = 0.0;
};

/// Largest zenith angle accepted by the flat-earth secant geometry, in degrees.
inline constexpr double kMaxZenithDeg = 89.0;

/// Refractive-index profiles above this altitude are negligible and not integrated.
inline constexpr double kTurbulenceCeilingM = 100e3;

/// Hufnagel–Valley C_n²(h) with wind speed w and ground constant C_0.
double cn2_hufnagel_valley(double altitude_m, double wind_speed_mps, double ground_cn2);

using Cn2Profile = std::function<double(double)>;

/// Plane-wave Rytov variance 2.25 k^{7/6} sec^{11/6}(ξ) ∫ C_n²(h) (h − h0)^{5/6} dh.
double rytov_variance(const TurbulencePath& path);
double rytov_variance(const TurbulencePath& path, const Cn2Profile& profile);

/// The path integral alone, ∫_{h0}^{min(H, ceiling)} C_n²(h)(h − h0)^{5/6} dh.
QuadratureResult rytov_path_integral(const TurbulencePath& path, const Cn2Profile& profile);

double slant_path_length_m(const TurbulencePath& path);

/// d = sqrt(k D² / (4 L)).
double aperture_parameter(const TurbulencePath& path);

/// Aperture-averaged plane-wave scintillation index from σ_R² and d.
double scintillation_index(double rytov, double aperture_param);

TurbulenceResult derive_turbulence(const TurbulencePath& path);

/// Empirical scintillation-to-EW fit. The coefficients come from the EW
/// fitting literature for aperture-averaged links; keep them together so
/// they can be audited or swapped in one place.
namespace ew_fit {
inline constexpr double kAlphaScale = 7.220;
inline constexpr double kGammaArgScale = 2.487;
inline constexpr double kGammaArgOffset = -0.104;
inline constexpr double kBetaScale = 1.012;
inline constexpr double kBetaExponent = -13.0 / 25.0;
inline constexpr double kBetaOffset = 0.142;
} // namespace ew_fit

/// (α, β) from the fit above, η from normalize_eta under `target`.
EwParams fit_ew_params(double scintillation, Normalization target = Normalization::unit_second_moment,
                       const SeriesControl& ctl = {});

} // namespace fsosec
