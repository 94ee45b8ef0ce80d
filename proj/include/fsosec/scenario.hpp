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

#include "fsosec/attenuation.hpp"
#include "fsosec/ew_channel.hpp"
#include "fsosec/turbulence.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsosec {

inline constexpr int kScenarioSchemaVersion = 1;

/// One downlink with a destination and a co-located eavesdropper.
///
/// Field names mirror the document keys, which carry their units. Both
/// receivers see the same atmosphere; only the eavesdropper aperture may be
/// set separately, and it follows the destination when absent.
struct LinkScenario {
    int schema_version = kScenarioSchemaVersion;
    std::string name;

    double transmitter_altitude_m = 0.0;
    double receiver_altitude_m = 0.0;
    double zenith_angle_deg = 0.0;
    double wind_speed_mps = 0.0;
    double ground_cn2 = 0.0; // m^{-2/3}, key ground_cn2_m-2/3
    double wavelength_nm = 1550.0;
    double aperture_diameter_d_m = 0.0;
    std::optional<double> aperture_diameter_e_m;
    double mean_snr_d_db = 0.0;
    double mean_snr_e_db = 0.0;
    Normalization normalization = Normalization::unit_second_moment;

    bool stratospheric_enabled = false;
    double stratospheric_coefficient_per_km = 0.0;

    bool cloud_enabled = false;
    std::string cloud_label;
    double cloud_liquid_water_content_g_per_m3 = 0.0;
    double cloud_droplet_concentration_per_cm3 = 0.0;
    double cloud_layer_thickness_km = 0.0;

    bool mie_enabled = false;
    double mie_extinction_ratio = 0.0;

    /// Lift the altitude rules that gate which attenuation factors apply.
    bool attenuation_rules_override = false;

    /// Scales β for the Monte Carlo sampler only. Anything other than 1
    /// deliberately breaks agreement with the closed form.
    double diagnostic_mc_beta_scale = 1.0;

    friend bool operator==(const LinkScenario&, const LinkScenario&) = default;
};

/// Parses and validates a scenario document. All problems are reported
/// together in one ValidationError, keyed by document field.
LinkScenario load_scenario(std::string_view document);
LinkScenario load_scenario_file(const std::filesystem::path& path);

/// Sets one field from its document key and textual value. Does not revalidate.
void apply_override(LinkScenario& s, std::string_view key, std::string_view value);

/// Parses "key=value" and applies it.
void apply_override(LinkScenario& s, std::string_view assignment);

/// Throws ValidationError listing every violated constraint.
void validate_scenario(const LinkScenario& s);

/// Canonical document text; load_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const LinkScenario& s);

/// FNV-1a of the canonical text.
std::uint64_t scenario_hash(const LinkScenario& s);

/// Names of every recognised document key, in canonical order.
std::vector<std::string> scenario_keys();

enum class Receiver { destination, eavesdropper };

/// Everything derived for one receiver: turbulence, fitted fading, attenuation
/// and the effective mean SNR.
struct ChannelReport {
    Receiver receiver = Receiver::destination;
    TurbulencePath path;
    TurbulenceResult turbulence;
    EwParams ew;
    AttenuationStack stack;
    TransmittanceBreakdown transmittance;
    std::optional<double> cloud_visibility_km;
    double baseline_mean_snr_db = 0.0;
    double mean_snr = 0.0; // linear, baseline · f²

    SnrChannel channel() const { return {ew, mean_snr}; }
};

TurbulencePath turbulence_path(const LinkScenario& s, Receiver receiver);
AttenuationStack attenuation_stack(const LinkScenario& s);

ChannelReport build_channel(const LinkScenario& s, Receiver receiver, const SeriesControl& ctl = {});

double db_to_linear(double db);
double linear_to_db(double linear);
double deg_to_rad(double deg);

} // namespace fsosec
