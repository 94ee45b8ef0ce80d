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

#include "fsosec/montecarlo.hpp"
#include "fsosec/scenario.hpp"
#include "fsosec/secrecy.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsosec {

inline constexpr int kSweepSchemaVersion = 1;

enum class SweepVariable {
    mean_snr_d_db,
    mean_snr_e_db,
    zenith_angle_deg,
    aperture_m, // destination aperture; the eavesdropper follows unless set apart
    wind_speed_mps,
    transmitter_altitude_m,
};

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view text);

/// Whether changing this variable requires re-deriving turbulence and fading.
bool affects_channel(SweepVariable v);

std::string_view to_string(ThresholdConvention c);
ThresholdConvention parse_threshold_convention(std::string_view text);

/// "a, b, c" or "start:step:stop" (stop included when hit to within 1e-9 step).
std::vector<double> parse_grid(std::string_view text);

struct SweepCurve {
    std::string name;
    LinkScenario scenario;
};

struct SweepSpec {
    int schema_version = kSweepSchemaVersion;
    std::string name;
    SweepVariable variable = SweepVariable::mean_snr_d_db;
    std::vector<double> grid;
    bool want_sop = true;
    bool want_ppsc = false;
    double secrecy_rate = 0.01;
    ThresholdConvention convention = ThresholdConvention::paper;
    SopForm form = SopForm::derived;
    McConfig mc;
    bool with_mc = false;
    bool use_cache = true;
    SeriesControl series;
    std::vector<SweepCurve> curves;

    /// Nonempty strictly ordered grid, at least one metric and one curve.
    void validate() const;
};

/// Parses a sweep document. Each `[curve NAME]` section names a scenario file
/// (looked up beside the spec, then in ../scenarios) plus scenario-key overrides.
SweepSpec load_sweep_spec(std::string_view document, const std::filesystem::path& base_dir);
SweepSpec load_sweep_spec_file(const std::filesystem::path& path);

struct SweepRow {
    std::size_t index = 0;
    double grid_value = 0.0;
    std::string status = "ok"; // "ok", "mc_only", or "error: ..."

    double mean_snr_d_db = 0.0;
    double mean_snr_e_db = 0.0;
    double zenith_angle_deg = 0.0;
    double wind_speed_mps = 0.0;
    double aperture_diameter_d_m = 0.0;
    double transmitter_altitude_m = 0.0;

    double rytov_variance = 0.0;
    double scintillation_index = 0.0;
    EwParams ew;
    EwParams ew_e; // equals ew unless the apertures differ
    double transmittance = 1.0;
    double effective_mean_snr_d = 0.0; // linear
    double effective_mean_snr_e = 0.0; // linear
    double gamma_th = 1.0;

    std::optional<SecrecyValue> sop;
    std::optional<SecrecyValue> ppsc;
    std::optional<McPointEstimate> mc;
};

struct CurveResult {
    std::string name;
    std::uint64_t scenario_hash = 0;
    std::vector<SweepRow> rows;
};

struct SweepResult {
    std::vector<CurveResult> curves;
};

/// One row per grid value and curve, in grid order. A failing row records its
/// error in `status` and the sweep carries on.
SweepResult run_sweep(const SweepSpec& spec);
CurveResult run_curve(const SweepSpec& spec, const SweepCurve& curve);

struct ValidationOptions {
    std::vector<double> mean_snr_d_db{0, 10, 20, 30, 40};
    std::vector<double> mean_snr_e_db; // empty: the scenario's own value
    double secrecy_rate = 0.01;
    ThresholdConvention convention = ThresholdConvention::paper;
    SopForm form = SopForm::derived;
    McConfig mc;
    SeriesControl series;
    double absolute_floor = 1e-3;
    double sigma_multiple = 3.0;
};

struct ValidationCheck {
    std::string metric; // "sop" or "ppsc"
    double mean_snr_d_db = 0.0;
    double mean_snr_e_db = 0.0;
    double closed_form = 0.0;
    double monte_carlo = 0.0;
    double std_error = 0.0;
    double tolerance = 0.0;
    double deviation = 0.0;
    bool pass = false;
    double mc_exact_event = 0.0; // the 1 + γ event, reported for reference only
};

struct ValidationReport {
    std::string scenario_name;
    std::uint64_t scenario_hash = 0;
    ValidationOptions options;
    EwParams ew;
    std::vector<ValidationCheck> checks;
    std::size_t worst = 0; // index of the largest deviation/tolerance ratio
    bool passed = false;
};

/// Closed form against Monte Carlo over the grid. The simulator counts the
/// same approximated event the closed form integrates.
ValidationReport run_validation(const LinkScenario& s, const ValidationOptions& opts);

} // namespace fsosec
