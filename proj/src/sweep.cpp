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

#include "fsosec/sweep.hpp"

#include "fsosec/errors.hpp"
#include "fsosec/keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace fsosec {
namespace {

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ValidationError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError(std::string(key), "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return v;
}

LinkScenario with_value(LinkScenario s, SweepVariable v, double x) {
    switch (v) {
    case SweepVariable::mean_snr_d_db:
        s.mean_snr_d_db = x;
        break;
    case SweepVariable::mean_snr_e_db:
        s.mean_snr_e_db = x;
        break;
    case SweepVariable::zenith_angle_deg:
        s.zenith_angle_deg = x;
        break;
    case SweepVariable::aperture_m:
        s.aperture_diameter_d_m = x;
        break;
    case SweepVariable::wind_speed_mps:
        s.wind_speed_mps = x;
        break;
    case SweepVariable::transmitter_altitude_m:
        s.transmitter_altitude_m = x;
        break;
    }
    return s;
}

// Everything the channel derivation reads, i.e. the scenario minus its SNRs.
std::string channel_key(LinkScenario s) {
    s.mean_snr_d_db = 0.0;
    s.mean_snr_e_db = 0.0;
    return serialize_scenario(s);
}

struct DerivedPair {
    ChannelReport destination;
    ChannelReport eavesdropper;
};

EwParams mc_law(const EwParams& ew, double beta_scale) {
    EwParams p = ew;
    p.beta *= beta_scale;
    return p;
}

std::filesystem::path resolve_scenario(const std::string& ref, const std::filesystem::path& base_dir) {
    const std::filesystem::path direct = base_dir / ref;
    if (std::filesystem::exists(direct)) {
        return direct;
    }
    const std::filesystem::path shipped = base_dir / ".." / "scenarios" / ref;
    if (std::filesystem::exists(shipped)) {
        return shipped;
    }
    throw MissingInput("scenario '" + ref + "' not found beside the spec or in ../scenarios");
}

} // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::mean_snr_d_db:
        return "mean_snr_d_db";
    case SweepVariable::mean_snr_e_db:
        return "mean_snr_e_db";
    case SweepVariable::zenith_angle_deg:
        return "zenith_angle_deg";
    case SweepVariable::aperture_m:
        return "aperture_m";
    case SweepVariable::wind_speed_mps:
        return "wind_speed_mps";
    case SweepVariable::transmitter_altitude_m:
        return "transmitter_altitude_m";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view text) {
    for (auto v : {SweepVariable::mean_snr_d_db, SweepVariable::mean_snr_e_db, SweepVariable::zenith_angle_deg,
                   SweepVariable::aperture_m, SweepVariable::wind_speed_mps, SweepVariable::transmitter_altitude_m}) {
        if (text == to_string(v)) {
            return v;
        }
    }
    if (text == "aperture_diameter_d_m") {
        return SweepVariable::aperture_m;
    }
    throw ValidationError("sweep_variable", "unknown sweep variable '" + std::string(text) + "'");
}

bool affects_channel(SweepVariable v) {
    return v != SweepVariable::mean_snr_d_db && v != SweepVariable::mean_snr_e_db;
}

std::string_view to_string(ThresholdConvention c) {
    return c == ThresholdConvention::paper ? "paper" : "shannon";
}

ThresholdConvention parse_threshold_convention(std::string_view text) {
    if (text == "paper") {
        return ThresholdConvention::paper;
    }
    if (text == "shannon") {
        return ThresholdConvention::shannon;
    }
    throw ValidationError("threshold_convention", "expected paper or shannon, got '" + std::string(text) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string body = trim(text);
    std::vector<double> grid;
    if (body.empty()) {
        return grid;
    }
    if (body.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(parse_double("grid", trim(item)));
        }
        if (parts.size() != 3 || parts[1] == 0.0) {
            throw ValidationError("grid", "range must be start:step:stop with a nonzero step");
        }
        const double start = parts[0];
        const double step = parts[1];
        const double stop = parts[2];
        const double span = (stop - start) / step;
        if (span < -1e-9) {
            throw ValidationError("grid", "step points away from stop");
        }
        const auto n = static_cast<long>(std::floor(span + 1e-9));
        if (n > 1'000'000) {
            throw ValidationError("grid", "range has too many points");
        }
        for (long i = 0; i <= n; ++i) {
            grid.push_back(start + static_cast<double>(i) * step);
        }
        return grid;
    }
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        grid.push_back(parse_double("grid", trim(item)));
    }
    return grid;
}

void SweepSpec::validate() const {
    std::vector<FieldError> errs;
    if (schema_version != kSweepSchemaVersion) {
        errs.push_back({"schema_version", "unsupported schema version " + std::to_string(schema_version)});
    }
    if (grid.empty()) {
        errs.push_back({"grid", "must not be empty"});
    } else if (grid.size() > 1) {
        const bool up = grid[1] > grid[0];
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
                errs.push_back({"grid", "must be strictly ordered"});
                break;
            }
        }
    }
    if (!want_sop && !want_ppsc) {
        errs.push_back({"metrics", "choose at least one of sop, ppsc"});
    }
    if (!(secrecy_rate >= 0.0) || !std::isfinite(secrecy_rate)) {
        errs.push_back({"secrecy_rate", "must be nonnegative"});
    }
    if (curves.empty()) {
        errs.push_back({"curve", "at least one [curve NAME] section is required"});
    }
    if (with_mc) {
        try {
            mc.validate();
        } catch (const DomainError& e) {
            errs.push_back({"mc_samples", e.what()});
        }
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

SweepSpec load_sweep_spec(std::string_view document, const std::filesystem::path& base_dir) {
    const KvDocument doc = parse_key_values(document);
    SweepSpec spec;
    spec.schema_version = 0;
    std::vector<FieldError> errs;
    auto field = [&](const KvEntry& e, auto&& apply) {
        try {
            apply();
        } catch (const ValidationError& v) {
            errs.insert(errs.end(), v.errors().begin(), v.errors().end());
        } catch (const std::exception& ex) {
            errs.push_back({e.key, ex.what()});
        }
    };
    bool saw_grid = false;
    bool saw_variable = false;
    for (const KvEntry& e : doc.root) {
        const std::string& v = e.value;
        if (e.key == "schema_version") {
            field(e, [&] { spec.schema_version = static_cast<int>(parse_count(e.key, v)); });
        } else if (e.key == "name") {
            spec.name = v;
        } else if (e.key == "sweep_variable") {
            saw_variable = true;
            field(e, [&] { spec.variable = parse_sweep_variable(v); });
        } else if (e.key == "grid") {
            saw_grid = true;
            field(e, [&] { spec.grid = parse_grid(v); });
        } else if (e.key == "metrics") {
            spec.want_sop = spec.want_ppsc = false;
            std::stringstream ss(v);
            std::string m;
            while (std::getline(ss, m, ',')) {
                m = trim(m);
                if (m == "sop") {
                    spec.want_sop = true;
                } else if (m == "ppsc") {
                    spec.want_ppsc = true;
                } else {
                    errs.push_back({"metrics", "unknown metric '" + m + "'"});
                }
            }
        } else if (e.key == "secrecy_rate") {
            field(e, [&] { spec.secrecy_rate = parse_double(e.key, v); });
        } else if (e.key == "threshold_convention") {
            field(e, [&] { spec.convention = parse_threshold_convention(v); });
        } else if (e.key == "mc_samples") {
            field(e, [&] { spec.mc.samples = parse_count(e.key, v); });
        } else if (e.key == "mc_seed") {
            field(e, [&] { spec.mc.seed = parse_count(e.key, v); });
        } else if (e.key == "mc_shards") {
            field(e, [&] { spec.mc.shards = static_cast<unsigned>(parse_count(e.key, v)); });
        } else if (e.key == "with_mc") {
            spec.with_mc = (v == "true");
        } else {
            errs.push_back({e.key, "unknown key (line " + std::to_string(e.line) + ")"});
        }
    }
    if (!saw_variable) {
        errs.push_back({"sweep_variable", "missing required key"});
    }
    if (!saw_grid) {
        errs.push_back({"grid", "missing required key"});
    }
    for (const KvSection& section : doc.sections) {
        if (section.kind != "curve") {
            errs.push_back({section.kind, "unknown section kind (line " + std::to_string(section.line) + ")"});
            continue;
        }
        const std::string prefix = "curve " + section.name + ".";
        const KvEntry* ref = nullptr;
        for (const KvEntry& e : section.entries) {
            if (e.key == "scenario") {
                ref = &e;
            }
        }
        if (ref == nullptr) {
            errs.push_back({prefix + "scenario", "missing required key"});
            continue;
        }
        try {
            SweepCurve curve{section.name, load_scenario_file(resolve_scenario(ref->value, base_dir))};
            for (const KvEntry& e : section.entries) {
                if (&e != ref) {
                    apply_override(curve.scenario, e.key, e.value);
                }
            }
            validate_scenario(curve.scenario);
            spec.curves.push_back(std::move(curve));
        } catch (const ValidationError& v) {
            for (const FieldError& f : v.errors()) {
                errs.push_back({prefix + f.field, f.message});
            }
        }
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec_file(const std::filesystem::path& path) {
    return load_sweep_spec(read_text_file(path), path.parent_path());
}

CurveResult run_curve(const SweepSpec& spec, const SweepCurve& curve) {
    CurveResult out;
    out.name = curve.name;
    out.scenario_hash = scenario_hash(curve.scenario);
    out.rows.resize(spec.grid.size());

    std::map<std::string, DerivedPair> cache;
    // Rows sharing one fading pair share one Monte Carlo pass.
    std::map<std::string, std::vector<std::size_t>> mc_groups;
    std::vector<std::string> row_keys(spec.grid.size());

    const double gamma_th = threshold_from_rate(spec.secrecy_rate, spec.convention);
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        SweepRow& row = out.rows[i];
        row.index = i;
        row.grid_value = spec.grid[i];
        const LinkScenario s = with_value(curve.scenario, spec.variable, spec.grid[i]);
        row.mean_snr_d_db = s.mean_snr_d_db;
        row.mean_snr_e_db = s.mean_snr_e_db;
        row.zenith_angle_deg = s.zenith_angle_deg;
        row.wind_speed_mps = s.wind_speed_mps;
        row.aperture_diameter_d_m = s.aperture_diameter_d_m;
        row.transmitter_altitude_m = s.transmitter_altitude_m;
        row.gamma_th = gamma_th;
        try {
            validate_scenario(s);
            const std::string key = channel_key(s);
            DerivedPair pair;
            if (spec.use_cache) {
                auto it = cache.find(key);
                if (it == cache.end()) {
                    it = cache.emplace(key, DerivedPair{build_channel(s, Receiver::destination, spec.series),
                                                        build_channel(s, Receiver::eavesdropper, spec.series)})
                             .first;
                }
                pair = it->second;
            } else {
                pair = {build_channel(s, Receiver::destination, spec.series),
                        build_channel(s, Receiver::eavesdropper, spec.series)};
            }
            // The cached channel carries the first row's SNRs; rescale here.
            pair.destination.mean_snr =
                attenuated_mean_snr(db_to_linear(s.mean_snr_d_db), pair.destination.transmittance.composite);
            pair.eavesdropper.mean_snr =
                attenuated_mean_snr(db_to_linear(s.mean_snr_e_db), pair.eavesdropper.transmittance.composite);

            row.rytov_variance = pair.destination.turbulence.rytov_variance;
            row.scintillation_index = pair.destination.turbulence.scintillation_index;
            row.ew = pair.destination.ew;
            row.ew_e = pair.eavesdropper.ew;
            row.transmittance = pair.destination.transmittance.composite;
            row.effective_mean_snr_d = pair.destination.mean_snr;
            row.effective_mean_snr_e = pair.eavesdropper.mean_snr;

            if (row.ew == row.ew_e) {
                const SecrecyQuery q{row.ew, row.effective_mean_snr_d, row.effective_mean_snr_e, gamma_th};
                if (spec.want_sop) {
                    row.sop = sop_closed_form(q, spec.series, spec.form);
                }
                if (spec.want_ppsc) {
                    row.ppsc = ppsc_closed_form(q, spec.series, spec.form);
                }
            } else {
                row.status = "mc_only";
            }
            if (spec.with_mc) {
                std::ostringstream k;
                k.precision(17);
                const double scale = s.diagnostic_mc_beta_scale;
                k << row.ew.alpha << ' ' << row.ew.beta * scale << ' ' << row.ew.eta << ' ' << row.ew_e.alpha << ' '
                  << row.ew_e.beta * scale << ' ' << row.ew_e.eta;
                row_keys[i] = k.str();
                mc_groups[row_keys[i]].push_back(i);
            }
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            row.sop.reset();
            row.ppsc.reset();
        }
    }

    for (const auto& [key, members] : mc_groups) {
        const SweepRow& first = out.rows[members.front()];
        const double scale = with_value(curve.scenario, spec.variable, first.grid_value).diagnostic_mc_beta_scale;
        const McChannels channels{mc_law(first.ew, scale), mc_law(first.ew_e, scale)};
        std::vector<McPoint> points;
        for (std::size_t i : members) {
            points.push_back({out.rows[i].effective_mean_snr_d, out.rows[i].effective_mean_snr_e, gamma_th});
        }
        try {
            const auto est = estimate_points(channels, points, spec.mc);
            for (std::size_t j = 0; j < members.size(); ++j) {
                out.rows[members[j]].mc = est[j];
            }
        } catch (const std::exception& e) {
            for (std::size_t i : members) {
                out.rows[i].status = std::string("error: ") + e.what();
            }
        }
    }
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    for (const SweepCurve& curve : spec.curves) {
        result.curves.push_back(run_curve(spec, curve));
    }
    return result;
}

ValidationReport run_validation(const LinkScenario& s, const ValidationOptions& opts) {
    validate_scenario(s);
    opts.mc.validate();
    if (opts.mean_snr_d_db.empty()) {
        throw ValidationError("grid", "must not be empty");
    }
    ValidationReport report;
    report.scenario_name = s.name;
    report.scenario_hash = scenario_hash(s);
    report.options = opts;

    const ChannelReport d = build_channel(s, Receiver::destination, opts.series);
    const ChannelReport e = build_channel(s, Receiver::eavesdropper, opts.series);
    if (!(d.ew == e.ew)) {
        throw DomainError("closed form needs equal fading at both receivers; the apertures differ");
    }
    report.ew = d.ew;
    const McChannels channels{mc_law(d.ew, s.diagnostic_mc_beta_scale), mc_law(e.ew, s.diagnostic_mc_beta_scale)};

    const std::vector<double> e_grid = opts.mean_snr_e_db.empty() ? std::vector<double>{s.mean_snr_e_db}
                                                                   : opts.mean_snr_e_db;
    const double gamma_th = threshold_from_rate(opts.secrecy_rate, opts.convention);
    std::vector<McPoint> points;
    std::vector<std::pair<double, double>> labels;
    for (double e_db : e_grid) {
        for (double d_db : opts.mean_snr_d_db) {
            points.push_back({attenuated_mean_snr(db_to_linear(d_db), d.transmittance.composite),
                              attenuated_mean_snr(db_to_linear(e_db), e.transmittance.composite), gamma_th});
            labels.emplace_back(d_db, e_db);
        }
    }
    const auto est = estimate_points(channels, points, opts.mc);

    double worst_ratio = -1.0;
    auto add = [&](std::string metric, std::size_t p, double closed, const McEstimate& mc, double exact) {
        ValidationCheck c;
        c.metric = std::move(metric);
        c.mean_snr_d_db = labels[p].first;
        c.mean_snr_e_db = labels[p].second;
        c.closed_form = closed;
        c.monte_carlo = mc.value;
        c.std_error = mc.std_error;
        c.tolerance = std::max(opts.sigma_multiple * mc.std_error, opts.absolute_floor);
        c.deviation = std::abs(closed - mc.value);
        c.pass = c.deviation <= c.tolerance;
        c.mc_exact_event = exact;
        const double ratio = c.deviation / c.tolerance;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            report.worst = report.checks.size();
        }
        report.checks.push_back(std::move(c));
    };
    for (std::size_t p = 0; p < points.size(); ++p) {
        const SecrecyQuery q{d.ew, points[p].mean_snr_d, points[p].mean_snr_e, gamma_th};
        add("sop", p, sop_closed_form(q, opts.series, opts.form).value, est[p].sop_approximated,
            est[p].sop_exact.value);
        add("ppsc", p, ppsc_closed_form(q, opts.series, opts.form).value, est[p].ppsc, est[p].ppsc.value);
    }
    report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.pass; });
    return report;
}

} // namespace fsosec
