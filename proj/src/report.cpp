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

#include "fsosec/report.hpp"

#include "fsosec/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fsosec {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

Cell parse_cell(const std::string& s) {
    if (s == "nan") {
        return kNan;
    }
    if (s.empty()) {
        return s;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() + s.size()) {
        return v;
    }
    return s;
}

double db_or_nan(double linear) { return linear > 0.0 ? linear_to_db(linear) : kNan; }

nlohmann::ordered_json json_number(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex_hash(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Table sweep_table(const SweepSpec& spec, const CurveResult& curve) {
    Table t;
    t.metadata = {
        {"schema_version", std::to_string(kSweepSchemaVersion)},
        {"sweep", spec.name},
        {"curve", curve.name},
        {"scenario_hash", hex_hash(curve.scenario_hash)},
        {"sweep_variable", std::string(to_string(spec.variable))},
        {"secrecy_rate", format_double(spec.secrecy_rate)},
        {"threshold_convention", std::string(to_string(spec.convention))},
        {"sop_form", spec.form == SopForm::derived ? "derived" : "as_printed"},
        {"series_rel_tolerance", format_double(spec.series.rel_tolerance)},
        {"series_max_terms", std::to_string(spec.series.max_terms_per_index)},
        {"mc_seed", spec.with_mc ? std::to_string(spec.mc.seed) : "none"},
        {"mc_samples", spec.with_mc ? std::to_string(spec.mc.samples) : "none"},
    };
    t.columns = {"index",
                 "mean_snr_d_db",
                 "mean_snr_e_db",
                 "zenith_angle_deg",
                 "wind_speed_mps",
                 "aperture_diameter_d_m",
                 "transmitter_altitude_m",
                 "status",
                 "rytov_variance",
                 "scintillation_index",
                 "ew_alpha",
                 "ew_beta",
                 "ew_eta",
                 "transmittance",
                 "effective_mean_snr_d_db",
                 "effective_mean_snr_e_db",
                 "gamma_th"};
    if (spec.want_sop) {
        t.columns.insert(t.columns.end(), {"sop", "sop_series_terms", "sop_tail_used", "sop_reflected"});
    }
    if (spec.want_ppsc) {
        t.columns.insert(t.columns.end(), {"ppsc", "ppsc_series_terms", "ppsc_tail_used", "ppsc_reflected"});
    }
    if (spec.with_mc) {
        if (spec.want_sop) {
            t.columns.insert(t.columns.end(), {"sop_mc", "sop_mc_std_error", "sop_mc_exact_event",
                                               "sop_mc_exact_event_std_error"});
        }
        if (spec.want_ppsc) {
            t.columns.insert(t.columns.end(), {"ppsc_mc", "ppsc_mc_std_error"});
        }
    }

    auto diag = [](std::vector<Cell>& row, const std::optional<SecrecyValue>& v) {
        if (v) {
            row.insert(row.end(), {v->value, static_cast<double>(v->diagnostics.terms),
                                   v->diagnostics.tail_used ? 1.0 : 0.0, v->diagnostics.reflected ? 1.0 : 0.0});
        } else {
            row.insert(row.end(), {kNan, kNan, kNan, kNan});
        }
    };
    for (const SweepRow& r : curve.rows) {
        const bool ok = r.status.rfind("error", 0) != 0;
        std::string status = one_line(r.status);
        for (const auto* v : {&r.sop, &r.ppsc}) {
            if (*v && !(*v)->diagnostics.note.empty()) {
                status += "; " + one_line((*v)->diagnostics.note);
            }
        }
        std::vector<Cell> row{static_cast<double>(r.index),
                              r.mean_snr_d_db,
                              r.mean_snr_e_db,
                              r.zenith_angle_deg,
                              r.wind_speed_mps,
                              r.aperture_diameter_d_m,
                              r.transmitter_altitude_m,
                              status,
                              ok ? r.rytov_variance : kNan,
                              ok ? r.scintillation_index : kNan,
                              ok ? r.ew.alpha : kNan,
                              ok ? r.ew.beta : kNan,
                              ok ? r.ew.eta : kNan,
                              ok ? r.transmittance : kNan,
                              ok ? db_or_nan(r.effective_mean_snr_d) : kNan,
                              ok ? db_or_nan(r.effective_mean_snr_e) : kNan,
                              r.gamma_th};
        if (spec.want_sop) {
            diag(row, r.sop);
        }
        if (spec.want_ppsc) {
            diag(row, r.ppsc);
        }
        if (spec.with_mc) {
            const bool has = r.mc.has_value();
            if (spec.want_sop) {
                row.insert(row.end(), {has ? r.mc->sop_approximated.value : kNan,
                                       has ? r.mc->sop_approximated.std_error : kNan,
                                       has ? r.mc->sop_exact.value : kNan, has ? r.mc->sop_exact.std_error : kNan});
            }
            if (spec.want_ppsc) {
                row.insert(row.end(), {has ? r.mc->ppsc.value : kNan, has ? r.mc->ppsc.std_error : kNan});
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table validation_table(const ValidationReport& report) {
    const auto& o = report.options;
    Table t;
    t.metadata = {
        {"schema_version", std::to_string(kSweepSchemaVersion)},
        {"scenario", report.scenario_name},
        {"scenario_hash", hex_hash(report.scenario_hash)},
        {"mc_seed", std::to_string(o.mc.seed)},
        {"mc_samples", std::to_string(o.mc.samples)},
        {"secrecy_rate", format_double(o.secrecy_rate)},
        {"threshold_convention", std::string(to_string(o.convention))},
        {"sop_form", o.form == SopForm::derived ? "derived" : "as_printed"},
        {"tolerance", "max(" + format_double(o.sigma_multiple) + "*std_error, " + format_double(o.absolute_floor) +
                          ")"},
        {"ew_alpha", format_double(report.ew.alpha)},
        {"ew_beta", format_double(report.ew.beta)},
        {"ew_eta", format_double(report.ew.eta)},
        {"result", report.passed ? "pass" : "fail"},
    };
    t.columns = {"metric",     "mean_snr_d_db", "mean_snr_e_db", "closed_form",     "monte_carlo",
                 "std_error",  "tolerance",     "deviation",     "mc_exact_event", "pass"};
    for (const ValidationCheck& c : report.checks) {
        t.rows.push_back({c.metric, c.mean_snr_d_db, c.mean_snr_e_db, c.closed_form, c.monte_carlo, c.std_error,
                          c.tolerance, c.deviation, c.mc_exact_event, c.pass ? 1.0 : 0.0});
    }
    return t;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.metadata) {
        out += "# " + k + ": " + one_line(v) + "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + csv_field(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            if (const double* d = std::get_if<double>(&row[i])) {
                out += format_double(*d);
            } else {
                out += csv_field(std::get<std::string>(row[i]));
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) {
        doc["metadata"][k] = v;
    }
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i])) {
                obj[t.columns[i]] = json_number(*d);
            } else {
                obj[t.columns[i]] = std::get<std::string>(row[i]);
            }
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

Table parse_csv(std::string_view text) {
    Table t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon == std::string::npos) {
                throw ParseError("malformed metadata line", line_no);
            }
            t.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (!header) {
            t.columns = std::move(fields);
            header = true;
            continue;
        }
        if (fields.size() != t.columns.size()) {
            throw ParseError("row width differs from header", line_no);
        }
        std::vector<Cell> row;
        for (const auto& f : fields) {
            row.push_back(parse_cell(f));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

struct ChannelFields {
    std::vector<std::pair<std::string, double>> numbers;
};

ChannelFields channel_fields(const ChannelReport& r) {
    ChannelFields f;
    f.numbers = {
        {"rytov_variance", r.turbulence.rytov_variance},
        {"scintillation_index", r.turbulence.scintillation_index},
        {"aperture_parameter", r.turbulence.aperture_parameter},
        {"slant_path_m", r.turbulence.path_length_m},
        {"ew_alpha", r.ew.alpha},
        {"ew_beta", r.ew.beta},
        {"ew_eta", r.ew.eta},
    };
    if (r.stack.stratospheric) {
        f.numbers.emplace_back("stratospheric_transmittance", r.transmittance.stratospheric);
    }
    if (r.cloud_visibility_km) {
        f.numbers.emplace_back("cloud_visibility_km", *r.cloud_visibility_km);
    }
    if (r.stack.geometric) {
        f.numbers.emplace_back("geometric_transmittance", r.transmittance.geometric);
    }
    if (r.stack.mie) {
        f.numbers.emplace_back("mie_transmittance", r.transmittance.mie);
    }
    f.numbers.emplace_back("composite_transmittance", r.transmittance.composite);
    f.numbers.emplace_back("baseline_mean_snr_db", r.baseline_mean_snr_db);
    f.numbers.emplace_back("effective_mean_snr", r.mean_snr);
    f.numbers.emplace_back("effective_mean_snr_db", db_or_nan(r.mean_snr));
    return f;
}

const char* receiver_name(Receiver r) { return r == Receiver::destination ? "destination" : "eavesdropper"; }

} // namespace

std::string channel_report_text(const LinkScenario& s, const ChannelReport& r) {
    std::string out = "scenario: " + s.name + "\n";
    out += "scenario_hash: " + hex_hash(scenario_hash(s)) + "\n";
    out += std::string("receiver: ") + receiver_name(r.receiver) + "\n";
    for (const auto& [k, v] : channel_fields(r).numbers) {
        out += k + ": " + format_double(v) + "\n";
    }
    return out;
}

std::string channel_report_json(const LinkScenario& s, const ChannelReport& r) {
    nlohmann::ordered_json doc;
    doc["scenario"] = s.name;
    doc["scenario_hash"] = hex_hash(scenario_hash(s));
    doc["receiver"] = receiver_name(r.receiver);
    for (const auto& [k, v] : channel_fields(r).numbers) {
        doc[k] = json_number(v);
    }
    return doc.dump(2) + "\n";
}

std::string validation_summary(const ValidationReport& report) {
    std::ostringstream out;
    const auto& o = report.options;
    out << "validate " << report.scenario_name << " seed=" << o.mc.seed << " samples=" << o.mc.samples
        << " scenario_hash=" << hex_hash(report.scenario_hash) << "\n";
    char line[256];
    for (const ValidationCheck& c : report.checks) {
        std::snprintf(line, sizeof line,
                      "%-4s D=%6.2f dB E=%6.2f dB closed=%.6e mc=%.6e dev=%.3e tol=%.3e %s\n", c.metric.c_str(),
                      c.mean_snr_d_db, c.mean_snr_e_db, c.closed_form, c.monte_carlo, c.deviation, c.tolerance,
                      c.pass ? "ok" : "FAIL");
        out << line;
    }
    if (!report.checks.empty()) {
        const ValidationCheck& w = report.checks[report.worst];
        std::snprintf(line, sizeof line, "worst: %s D=%.2f dB E=%.2f dB dev/tol=%.3f\n", w.metric.c_str(),
                      w.mean_snr_d_db, w.mean_snr_e_db, w.deviation / w.tolerance);
        out << line;
    }
    out << (report.passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace fsosec
