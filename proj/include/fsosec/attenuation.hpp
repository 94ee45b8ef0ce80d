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

#include <optional>
#include <string>

namespace fsosec {

struct StratosphericLayer {
    double coefficient_per_km = 0.0; // σ^S
    double path_km = 0.0;
};

struct GeometricLayer {
    double visibility_km = 1.0;
    double wavelength_nm = 1550.0;
    double path_km = 0.0;
};

struct MieLayer {
    double extinction_ratio = 0.0; // τ
    double zenith_angle_rad = 0.0;
};

/// Transmittance factors present on one link; absent factors count as 1.
struct AttenuationStack {
    std::optional<StratosphericLayer> stratospheric;
    std::optional<GeometricLayer> geometric;
    std::optional<MieLayer> mie;
};

struct CloudMicrophysics {
    double liquid_water_content_g_m3 = 0.0;
    double droplet_concentration_cm3 = 0.0;
    double layer_thickness_km = 0.0;
    std::string label;

    void validate() const;
};

/// Beer–Lambert exp(−σ L).
double stratospheric_transmittance(double sigma_per_km, double path_km);

/// Kim-model particle size exponent. Piecewise and deliberately discontinuous
/// at the band edges.
double kim_exponent(double visibility_km);

/// Scattering coefficient (3.91/V)(λ/550)^{−ϱ} in km⁻¹.
double geometric_coefficient_per_km(double visibility_km, double wavelength_nm);

double geometric_transmittance(double visibility_km, double wavelength_nm, double path_km);

/// V = 1.002 / (LWC · N)^{0.6473} km.
double visibility_from_cloud(const CloudMicrophysics& cloud);

namespace cloud_visibility {
inline constexpr double kScale = 1.002;
inline constexpr double kExponent = 0.6473;
} // namespace cloud_visibility

/// exp(−τ / sin Θ) with elevation Θ = π/2 − ξ. Θ = 0 is rejected.
double mie_transmittance(double tau, double zenith_angle_rad);

/// (h_high − h_low) sec ξ, converted to km.
double slant_length_km(double h_low_m, double h_high_m, double zenith_angle_rad);

struct TransmittanceBreakdown {
    double stratospheric = 1.0;
    double geometric = 1.0;
    double mie = 1.0;
    double composite = 1.0;
};

TransmittanceBreakdown evaluate_stack(const AttenuationStack& stack);
double composite_transmittance(const AttenuationStack& stack);

/// γ̄_eff = γ̄ f² for a field transmittance f.
double attenuated_mean_snr(double baseline_mean_snr, double transmittance);

} // namespace fsosec
