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

#include "fsosec/scenario.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace fsosec {
namespace {

constexpr double kStratosphereFloorM = 10e3;
constexpr double kMieCeilingM = 5e3;

// Raised by value parsers; turned into a FieldError by the caller.
struct BadValue : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double parse_number(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw BadValue("expected a number, got '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) {
        throw BadValue("value must be finite");
    }
    return v;
}

int parse_int(std::string_view text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw BadValue("expected an integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view text) {
    if (text == "true" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "no" || text == "0") {
        return false;
    }
    throw BadValue("expected true or false, got '" + std::string(text) + "'");
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

const char* format_bool(bool b) { return b ? "true" : "false"; }

enum class Requirement { always, optional, when_stratospheric, when_cloud, when_mie };

struct KeySpec {
    const char* key;
    Requirement requirement;
    std::function<std::optional<std::string>(const LinkScenario&)> get;
    std::function<void(LinkScenario&, std::string_view)> set;
};

template <typename Field>
KeySpec number_key(const char* key, Requirement req, Field LinkScenario::*field) {
    return {key, req, [field](const LinkScenario& s) { return std::optional(format_number(s.*field)); },
            [field](LinkScenario& s, std::string_view v) { s.*field = parse_number(v); }};
}

KeySpec bool_key(const char* key, bool LinkScenario::*field) {
    return {key, Requirement::optional,
            [field](const LinkScenario& s) { return std::optional<std::string>(format_bool(s.*field)); },
            [field](LinkScenario& s, std::string_view v) { s.*field = parse_bool(v); }};
}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        t.push_back({"schema_version", Requirement::always,
                     [](const LinkScenario& s) { return std::optional(std::to_string(s.schema_version)); },
                     [](LinkScenario& s, std::string_view v) { s.schema_version = parse_int(v); }});
        t.push_back({"name", Requirement::always, [](const LinkScenario& s) { return std::optional(s.name); },
                     [](LinkScenario& s, std::string_view v) { s.name = std::string(v); }});
        t.push_back(number_key("transmitter_altitude_m", Requirement::always, &LinkScenario::transmitter_altitude_m));
        t.push_back(number_key("receiver_altitude_m", Requirement::always, &LinkScenario::receiver_altitude_m));
        t.push_back(number_key("zenith_angle_deg", Requirement::always, &LinkScenario::zenith_angle_deg));
        t.push_back(number_key("wind_speed_mps", Requirement::always, &LinkScenario::wind_speed_mps));
        t.push_back(number_key("ground_cn2_m-2/3", Requirement::always, &LinkScenario::ground_cn2));
        t.push_back(number_key("wavelength_nm", Requirement::always, &LinkScenario::wavelength_nm));
        t.push_back(number_key("aperture_diameter_d_m", Requirement::always, &LinkScenario::aperture_diameter_d_m));
        t.push_back({"aperture_diameter_e_m", Requirement::optional,
                     [](const LinkScenario& s) {
                         return s.aperture_diameter_e_m ? std::optional(format_number(*s.aperture_diameter_e_m))
                                                        : std::nullopt;
                     },
                     [](LinkScenario& s, std::string_view v) { s.aperture_diameter_e_m = parse_number(v); }});
        t.push_back(number_key("mean_snr_d_db", Requirement::always, &LinkScenario::mean_snr_d_db));
        t.push_back(number_key("mean_snr_e_db", Requirement::always, &LinkScenario::mean_snr_e_db));
        t.push_back({"normalization", Requirement::optional,
                     [](const LinkScenario& s) {
                         return std::optional<std::string>(s.normalization == Normalization::unit_mean
                                                               ? "unit_mean"
                                                               : "unit_second_moment");
                     },
                     [](LinkScenario& s, std::string_view v) {
                         if (v == "unit_second_moment") {
                             s.normalization = Normalization::unit_second_moment;
                         } else if (v == "unit_mean") {
                             s.normalization = Normalization::unit_mean;
                         } else {
                             throw BadValue("expected unit_second_moment or unit_mean");
                         }
                     }});
        t.push_back(bool_key("stratospheric_enabled", &LinkScenario::stratospheric_enabled));
        t.push_back(number_key("stratospheric_coefficient_per_km", Requirement::when_stratospheric,
                               &LinkScenario::stratospheric_coefficient_per_km));
        t.push_back(bool_key("cloud_enabled", &LinkScenario::cloud_enabled));
        t.push_back({"cloud_label", Requirement::optional,
                     [](const LinkScenario& s) {
                         return s.cloud_label.empty() ? std::nullopt : std::optional(s.cloud_label);
                     },
                     [](LinkScenario& s, std::string_view v) { s.cloud_label = std::string(v); }});
        t.push_back(number_key("cloud_liquid_water_content_g_per_m3", Requirement::when_cloud,
                               &LinkScenario::cloud_liquid_water_content_g_per_m3));
        t.push_back(number_key("cloud_droplet_concentration_per_cm3", Requirement::when_cloud,
                               &LinkScenario::cloud_droplet_concentration_per_cm3));
        t.push_back(number_key("cloud_layer_thickness_km", Requirement::when_cloud,
                               &LinkScenario::cloud_layer_thickness_km));
        t.push_back(bool_key("mie_enabled", &LinkScenario::mie_enabled));
        t.push_back(number_key("mie_extinction_ratio", Requirement::when_mie, &LinkScenario::mie_extinction_ratio));
        t.push_back(bool_key("attenuation_rules_override", &LinkScenario::attenuation_rules_override));
        t.push_back(number_key("diagnostic_mc_beta_scale", Requirement::optional,
                               &LinkScenario::diagnostic_mc_beta_scale));
        return t;
    }();
    return table;
}

const KeySpec* find_key(std::string_view key) {
    for (const auto& spec : key_table()) {
        if (key == spec.key) {
            return &spec;
        }
    }
    return nullptr;
}

void check_validity(const LinkScenario& s, std::vector<FieldError>& errs) {
    if (s.schema_version != kScenarioSchemaVersion) {
        errs.push_back({"schema_version", "unsupported schema version " + std::to_string(s.schema_version)});
    }
    if (s.name.empty()) {
        errs.push_back({"name", "must not be empty"});
    }
    if (!(s.receiver_altitude_m >= 0.0)) {
        errs.push_back({"receiver_altitude_m", "must be nonnegative"});
    }
    if (!(s.transmitter_altitude_m > s.receiver_altitude_m)) {
        errs.push_back({"transmitter_altitude_m", "must exceed receiver_altitude_m"});
    }
    if (!(s.zenith_angle_deg >= 0.0 && s.zenith_angle_deg < kMaxZenithDeg)) {
        errs.push_back({"zenith_angle_deg", "must lie in [0, 89)"});
    }
    if (!(s.wind_speed_mps >= 0.0)) {
        errs.push_back({"wind_speed_mps", "must be nonnegative"});
    }
    if (!(s.ground_cn2 >= 0.0)) {
        errs.push_back({"ground_cn2_m-2/3", "must be nonnegative"});
    }
    if (!(s.wavelength_nm > 0.0)) {
        errs.push_back({"wavelength_nm", "must be positive"});
    }
    if (!(s.aperture_diameter_d_m >= 0.0)) {
        errs.push_back({"aperture_diameter_d_m", "must be nonnegative"});
    }
    if (s.aperture_diameter_e_m && !(*s.aperture_diameter_e_m >= 0.0)) {
        errs.push_back({"aperture_diameter_e_m", "must be nonnegative"});
    }
    if (!std::isfinite(s.mean_snr_d_db)) {
        errs.push_back({"mean_snr_d_db", "must be finite"});
    }
    if (!std::isfinite(s.mean_snr_e_db)) {
        errs.push_back({"mean_snr_e_db", "must be finite"});
    }
    if (s.stratospheric_enabled) {
        if (!(s.stratospheric_coefficient_per_km >= 0.0)) {
            errs.push_back({"stratospheric_coefficient_per_km", "must be nonnegative"});
        }
        const bool both_high =
            s.receiver_altitude_m > kStratosphereFloorM && s.transmitter_altitude_m > kStratosphereFloorM;
        if (!both_high && !s.attenuation_rules_override) {
            errs.push_back({"stratospheric_enabled",
                            "stratospheric attenuation applies only when both endpoints are above 10 km "
                            "(set attenuation_rules_override = true to force)"});
        }
    }
    const bool near_ground = s.receiver_altitude_m < kMieCeilingM;
    if (s.cloud_enabled) {
        if (!(s.cloud_liquid_water_content_g_per_m3 > 0.0)) {
            errs.push_back({"cloud_liquid_water_content_g_per_m3", "must be positive"});
        }
        if (!(s.cloud_droplet_concentration_per_cm3 > 0.0)) {
            errs.push_back({"cloud_droplet_concentration_per_cm3", "must be positive"});
        }
        if (!(s.cloud_layer_thickness_km > 0.0)) {
            errs.push_back({"cloud_layer_thickness_km", "must be positive"});
        }
        if (!near_ground && !s.attenuation_rules_override) {
            errs.push_back({"cloud_enabled", "cloud scattering applies only to receivers below 5 km "
                                             "(set attenuation_rules_override = true to force)"});
        }
    }
    if (s.mie_enabled) {
        if (!(s.mie_extinction_ratio >= 0.0)) {
            errs.push_back({"mie_extinction_ratio", "must be nonnegative"});
        }
        if (!near_ground && !s.attenuation_rules_override) {
            errs.push_back({"mie_enabled", "Mie scattering applies only to receivers below 5 km "
                                           "(set attenuation_rules_override = true to force)"});
        }
    }
    if (!(s.diagnostic_mc_beta_scale > 0.0)) {
        errs.push_back({"diagnostic_mc_beta_scale", "must be positive"});
    }
}

} // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<std::string> scenario_keys() {
    std::vector<std::string> keys;
    for (const auto& spec : key_table()) {
        keys.emplace_back(spec.key);
    }
    return keys;
}

void validate_scenario(const LinkScenario& s) {
    std::vector<FieldError> errs;
    check_validity(s, errs);
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

LinkScenario load_scenario(std::string_view document) {
    const KvDocument doc = parse_key_values(document);
    if (!doc.sections.empty()) {
        throw ParseError("scenario documents take no [section] headers", doc.sections.front().line);
    }
    LinkScenario s;
    s.schema_version = 0;
    std::vector<FieldError> errs;
    std::set<std::string> present;
    for (const KvEntry& e : doc.root) {
        const KeySpec* spec = find_key(e.key);
        if (spec == nullptr) {
            errs.push_back({e.key, "unknown key (line " + std::to_string(e.line) + ")"});
            continue;
        }
        try {
            spec->set(s, e.value);
            present.insert(e.key);
        } catch (const BadValue& bad) {
            errs.push_back({e.key, bad.what()});
        }
    }
    for (const auto& spec : key_table()) {
        const bool needed = spec.requirement == Requirement::always ||
                            (spec.requirement == Requirement::when_stratospheric && s.stratospheric_enabled) ||
                            (spec.requirement == Requirement::when_cloud && s.cloud_enabled) ||
                            (spec.requirement == Requirement::when_mie && s.mie_enabled);
        if (needed && !present.contains(spec.key)) {
            errs.push_back({spec.key, "missing required key"});
        }
    }
    if (errs.empty()) {
        check_validity(s, errs);
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
    return s;
}

LinkScenario load_scenario_file(const std::filesystem::path& path) {
    return load_scenario(read_text_file(path));
}

void apply_override(LinkScenario& s, std::string_view key, std::string_view value) {
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) {
        throw ValidationError(std::string(key), "unknown key");
    }
    try {
        spec->set(s, trim(value));
    } catch (const BadValue& bad) {
        throw ValidationError(std::string(key), bad.what());
    }
}

void apply_override(LinkScenario& s, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ValidationError(std::string(assignment), "override must have the form KEY=VALUE");
    }
    apply_override(s, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string serialize_scenario(const LinkScenario& s) {
    std::string out;
    for (const auto& spec : key_table()) {
        if (const auto v = spec.get(s)) {
            out += spec.key;
            out += " = ";
            out += *v;
            out += '\n';
        }
    }
    return out;
}

std::uint64_t scenario_hash(const LinkScenario& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : serialize_scenario(s)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

TurbulencePath turbulence_path(const LinkScenario& s, Receiver receiver) {
    TurbulencePath p;
    p.wavelength_m = s.wavelength_nm * 1e-9;
    p.zenith_angle_rad = deg_to_rad(s.zenith_angle_deg);
    p.wind_speed_mps = s.wind_speed_mps;
    p.ground_cn2 = s.ground_cn2;
    p.receiver_altitude_m = s.receiver_altitude_m;
    p.transmitter_altitude_m = s.transmitter_altitude_m;
    p.aperture_diameter_m = receiver == Receiver::destination
                                ? s.aperture_diameter_d_m
                                : s.aperture_diameter_e_m.value_or(s.aperture_diameter_d_m);
    return p;
}

AttenuationStack attenuation_stack(const LinkScenario& s) {
    AttenuationStack stack;
    const double zenith = deg_to_rad(s.zenith_angle_deg);
    if (s.stratospheric_enabled) {
        stack.stratospheric = StratosphericLayer{
            s.stratospheric_coefficient_per_km,
            slant_length_km(s.receiver_altitude_m, s.transmitter_altitude_m, zenith)};
    }
    if (s.cloud_enabled) {
        const CloudMicrophysics cloud{s.cloud_liquid_water_content_g_per_m3, s.cloud_droplet_concentration_per_cm3,
                                      s.cloud_layer_thickness_km, s.cloud_label};
        // Beer–Lambert only inside the cloud layer, stretched by the slant.
        stack.geometric = GeometricLayer{visibility_from_cloud(cloud), s.wavelength_nm,
                                         s.cloud_layer_thickness_km / std::cos(zenith)};
    }
    if (s.mie_enabled) {
        stack.mie = MieLayer{s.mie_extinction_ratio, zenith};
    }
    return stack;
}

ChannelReport build_channel(const LinkScenario& s, Receiver receiver, const SeriesControl& ctl) {
    validate_scenario(s);
    ChannelReport r;
    r.receiver = receiver;
    r.path = turbulence_path(s, receiver);
    r.turbulence = derive_turbulence(r.path);
    r.ew = fit_ew_params(r.turbulence.scintillation_index, s.normalization, ctl);
    r.stack = attenuation_stack(s);
    r.transmittance = evaluate_stack(r.stack);
    if (r.stack.geometric) {
        r.cloud_visibility_km = r.stack.geometric->visibility_km;
    }
    r.baseline_mean_snr_db = receiver == Receiver::destination ? s.mean_snr_d_db : s.mean_snr_e_db;
    r.mean_snr = attenuated_mean_snr(db_to_linear(r.baseline_mean_snr_db), r.transmittance.composite);
    return r;
}

} // namespace fsosec
