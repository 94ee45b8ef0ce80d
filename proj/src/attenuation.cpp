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

#include "fsosec/attenuation.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/turbulence.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fsosec {

void CloudMicrophysics::validate() const {
    std::vector<FieldError> errs;
    if (!(liquid_water_content_g_m3 > 0.0)) {
        errs.push_back({"liquid_water_content", "must be positive"});
    }
    if (!(droplet_concentration_cm3 > 0.0)) {
        errs.push_back({"droplet_concentration", "must be positive"});
    }
    if (!(layer_thickness_km > 0.0)) {
        errs.push_back({"layer_thickness", "must be positive"});
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

double stratospheric_transmittance(double sigma_per_km, double path_km) {
    if (!(sigma_per_km >= 0.0) || !(path_km >= 0.0)) {
        throw DomainError("stratospheric_transmittance: coefficient and path must be nonnegative");
    }
    return std::exp(-sigma_per_km * path_km);
}

double kim_exponent(double visibility_km) {
    if (!(visibility_km > 0.0)) {
        throw DomainError("kim_exponent: visibility must be positive");
    }
    const double v = visibility_km;
    if (v > 50.0) {
        return 1.6;
    }
    if (v > 6.0) {
        return 1.3;
    }
    if (v > 1.0) {
        return 0.16 * v + 0.34;
    }
    if (v > 0.5) {
        return v - 0.5;
    }
    return 0.0;
}

double geometric_coefficient_per_km(double visibility_km, double wavelength_nm) {
    if (!(visibility_km > 0.0) || !(wavelength_nm > 0.0)) {
        throw DomainError("geometric_coefficient_per_km: visibility and wavelength must be positive");
    }
    return 3.91 / visibility_km * std::pow(wavelength_nm / 550.0, -kim_exponent(visibility_km));
}

double geometric_transmittance(double visibility_km, double wavelength_nm, double path_km) {
    if (!(path_km >= 0.0)) {
        throw DomainError("geometric_transmittance: path must be nonnegative");
    }
    return std::exp(-geometric_coefficient_per_km(visibility_km, wavelength_nm) * path_km);
}

double visibility_from_cloud(const CloudMicrophysics& cloud) {
    cloud.validate();
    const double product = cloud.liquid_water_content_g_m3 * cloud.droplet_concentration_cm3;
    return cloud_visibility::kScale / std::pow(product, cloud_visibility::kExponent);
}

double mie_transmittance(double tau, double zenith_angle_rad) {
    if (!(tau >= 0.0)) {
        throw DomainError("mie_transmittance: extinction ratio must be nonnegative");
    }
    const double elevation = std::numbers::pi / 2.0 - zenith_angle_rad;
    if (!(elevation > 0.0 && elevation <= std::numbers::pi / 2.0)) {
        throw DomainError("mie_transmittance: elevation angle must lie in (0, pi/2]");
    }
    return std::exp(-tau / std::sin(elevation));
}

double slant_length_km(double h_low_m, double h_high_m, double zenith_angle_rad) {
    if (!(h_high_m > h_low_m)) {
        throw DomainError("slant_length_km: upper altitude must exceed lower altitude");
    }
    if (!(zenith_angle_rad >= 0.0 && zenith_angle_rad < kMaxZenithDeg * std::numbers::pi / 180.0)) {
        throw DomainError("slant_length_km: zenith angle outside [0, 89) degrees");
    }
    return (h_high_m - h_low_m) / std::cos(zenith_angle_rad) / 1000.0;
}

TransmittanceBreakdown evaluate_stack(const AttenuationStack& stack) {
    TransmittanceBreakdown out;
    if (stack.stratospheric) {
        out.stratospheric = stratospheric_transmittance(stack.stratospheric->coefficient_per_km,
                                                        stack.stratospheric->path_km);
    }
    if (stack.geometric) {
        out.geometric = geometric_transmittance(stack.geometric->visibility_km,
                                                stack.geometric->wavelength_nm, stack.geometric->path_km);
    }
    if (stack.mie) {
        out.mie = mie_transmittance(stack.mie->extinction_ratio, stack.mie->zenith_angle_rad);
    }
    out.composite = out.stratospheric * out.geometric * out.mie;
    return out;
}

double composite_transmittance(const AttenuationStack& stack) { return evaluate_stack(stack).composite; }

double attenuated_mean_snr(double baseline_mean_snr, double transmittance) {
    if (!(transmittance > 0.0 && transmittance <= 1.0)) {
        throw DomainError("attenuated_mean_snr: transmittance must lie in (0, 1]");
    }
    return baseline_mean_snr * transmittance * transmittance;
}

} // namespace fsosec
