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

#include "fsosec/fsosec.h"

#include "fsosec/errors.hpp"
#include "fsosec/montecarlo.hpp"
#include "fsosec/report.hpp"
#include "fsosec/scenario.hpp"
#include "fsosec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

using namespace fsosec;

struct fsosec_scenario {
    LinkScenario scenario;
};

struct fsosec_sweep {
    SweepSpec spec;
};

struct fsosec_sweep_result {
    SweepSpec spec;
    SweepResult result;
    std::vector<Table> tables;
};

struct fsosec_validation {
    ValidationReport report;
};

namespace {

thread_local std::string g_last_error;

// Caller mistakes: null pointers, out-of-range indices, unknown enum values.
struct BadArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <typename F>
fsosec_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return FSOSEC_OK;
    } catch (const BadArgument& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_INVALID_ARGUMENT;
    } catch (const ValidationError& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_VALIDATION;
    } catch (const ParseError& e) {
        g_last_error = "parse error at line " + std::to_string(e.line()) + ": " + e.what();
        return FSOSEC_ERR_PARSE;
    } catch (const MissingInput& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_NOT_FOUND;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_IO;
    } catch (const SeriesNotConverged& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_NOT_CONVERGED;
    } catch (const QuadratureError& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_NOT_CONVERGED;
    } catch (const DomainError& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FSOSEC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FSOSEC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FSOSEC_ERR_INTERNAL;
    }
}


template <typename... P>
void require(const char* fn, const P*... ptrs) {
    if (((ptrs == nullptr) || ...)) {
        throw BadArgument(std::string(fn) + ": null argument");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

EwParams to_ew(const fsosec_ew_params* p) { return EwParams{p->alpha, p->beta, p->eta}; }

fsosec_ew_params from_ew(const EwParams& p) { return {p.alpha, p.beta, p.eta}; }

Receiver to_receiver(fsosec_receiver r) {
    if (r != FSOSEC_DESTINATION && r != FSOSEC_EAVESDROPPER) {
        throw BadArgument("unknown receiver");
    }
    return r == FSOSEC_DESTINATION ? Receiver::destination : Receiver::eavesdropper;
}

ThresholdConvention to_convention(fsosec_convention c) {
    if (c != FSOSEC_CONVENTION_PAPER && c != FSOSEC_CONVENTION_SHANNON) {
        throw BadArgument("unknown threshold convention");
    }
    return c == FSOSEC_CONVENTION_PAPER ? ThresholdConvention::paper : ThresholdConvention::shannon;
}

fsosec_mc_estimate to_c(const McEstimate& e) { return {e.value, e.std_error}; }

} // namespace

extern "C" {

FSOSEC_API const char* fsosec_version(void) { return "1.0.0"; }

FSOSEC_API const char* fsosec_last_error(void) { return g_last_error.c_str(); }

FSOSEC_API const char* fsosec_status_name(fsosec_status status) {
    switch (status) {
    case FSOSEC_OK:
        return "ok";
    case FSOSEC_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case FSOSEC_ERR_PARSE:
        return "parse error";
    case FSOSEC_ERR_VALIDATION:
        return "validation error";
    case FSOSEC_ERR_NOT_FOUND:
        return "not found";
    case FSOSEC_ERR_DOMAIN:
        return "domain error";
    case FSOSEC_ERR_NOT_CONVERGED:
        return "not converged";
    case FSOSEC_ERR_IO:
        return "i/o error";
    case FSOSEC_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

FSOSEC_API void fsosec_string_free(char* s) { std::free(s); }

FSOSEC_API fsosec_status fsosec_scenario_load_file(const char* path, fsosec_scenario** out) {
    return guarded([&] {
        require(__func__, path, out);
        *out = nullptr;
        *out = new fsosec_scenario{load_scenario_file(path)};
    });
}

FSOSEC_API fsosec_status fsosec_scenario_load_text(const char* text, fsosec_scenario** out) {
    return guarded([&] {
        require(__func__, text, out);
        *out = nullptr;
        *out = new fsosec_scenario{load_scenario(text)};
    });
}

FSOSEC_API void fsosec_scenario_free(fsosec_scenario* s) { delete s; }

FSOSEC_API fsosec_status fsosec_scenario_override(fsosec_scenario* s, const char* assignment) {
    return guarded([&] {
        require(__func__, s, assignment);
        apply_override(s->scenario, assignment);
    });
}

FSOSEC_API fsosec_status fsosec_scenario_validate(const fsosec_scenario* s) {
    return guarded([&] {
        require(__func__, s);
        validate_scenario(s->scenario);
    });
}

FSOSEC_API fsosec_status fsosec_scenario_serialize(const fsosec_scenario* s, char** out) {
    return guarded([&] {
        require(__func__, s, out);
        *out = dup_string(serialize_scenario(s->scenario));
    });
}

FSOSEC_API fsosec_status fsosec_scenario_hash(const fsosec_scenario* s, uint64_t* out) {
    return guarded([&] {
        require(__func__, s, out);
        *out = scenario_hash(s->scenario);
    });
}

FSOSEC_API fsosec_status fsosec_channel_derive(const fsosec_scenario* s, fsosec_receiver receiver,
                                               fsosec_channel_info* out) {
    return guarded([&] {
        require(__func__, s, out);
        const ChannelReport r = build_channel(s->scenario, to_receiver(receiver));
        *out = {r.turbulence.rytov_variance, r.turbulence.scintillation_index, from_ew(r.ew),
                r.transmittance.composite, r.mean_snr};
    });
}

FSOSEC_API fsosec_status fsosec_channel_report(const fsosec_scenario* s, fsosec_receiver receiver,
                                               fsosec_format format, char** out) {
    return guarded([&] {
        require(__func__, s, out);
        if (format != FSOSEC_FORMAT_TEXT && format != FSOSEC_FORMAT_JSON) {
            throw BadArgument("channel report supports text or json");
        }
        const ChannelReport r = build_channel(s->scenario, to_receiver(receiver));
        *out = dup_string(format == FSOSEC_FORMAT_JSON ? channel_report_json(s->scenario, r)
                                                       : channel_report_text(s->scenario, r));
    });
}

FSOSEC_API fsosec_status fsosec_sweep_load_file(const char* path, fsosec_sweep** out) {
    return guarded([&] {
        require(__func__, path, out);
        *out = nullptr;
        *out = new fsosec_sweep{load_sweep_spec_file(path)};
    });
}

FSOSEC_API void fsosec_sweep_free(fsosec_sweep* sw) { delete sw; }

FSOSEC_API fsosec_status fsosec_sweep_name(const fsosec_sweep* sw, char** out) {
    return guarded([&] {
        require(__func__, sw, out);
        *out = dup_string(sw->spec.name);
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_seed(fsosec_sweep* sw, uint64_t seed) {
    return guarded([&] {
        require(__func__, sw);
        sw->spec.mc.seed = seed;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_mc_samples(fsosec_sweep* sw, uint64_t samples) {
    return guarded([&] {
        require(__func__, sw);
        McConfig mc = sw->spec.mc;
        mc.samples = samples;
        mc.validate();
        sw->spec.mc = mc;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_shards(fsosec_sweep* sw, unsigned shards) {
    return guarded([&] {
        require(__func__, sw);
        McConfig mc = sw->spec.mc;
        mc.shards = shards;
        mc.validate();
        sw->spec.mc = mc;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_rate(fsosec_sweep* sw, double rate) {
    return guarded([&] {
        require(__func__, sw);
        if (!(rate >= 0.0) || !std::isfinite(rate)) {
            throw ValidationError("secrecy_rate", "must be nonnegative");
        }
        sw->spec.secrecy_rate = rate;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_convention(fsosec_sweep* sw, fsosec_convention convention) {
    return guarded([&] {
        require(__func__, sw);
        sw->spec.convention = to_convention(convention);
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_as_printed(fsosec_sweep* sw, int enabled) {
    return guarded([&] {
        require(__func__, sw);
        sw->spec.form = enabled ? SopForm::as_printed : SopForm::derived;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_with_mc(fsosec_sweep* sw, int enabled) {
    return guarded([&] {
        require(__func__, sw);
        sw->spec.with_mc = enabled != 0;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_cache(fsosec_sweep* sw, int enabled) {
    return guarded([&] {
        require(__func__, sw);
        sw->spec.use_cache = enabled != 0;
    });
}

FSOSEC_API fsosec_status fsosec_sweep_set_grid(fsosec_sweep* sw, const char* grid) {
    return guarded([&] {
        require(__func__, sw, grid);
        SweepSpec spec = sw->spec;
        spec.grid = parse_grid(grid);
        spec.validate();
        sw->spec = std::move(spec);
    });
}

FSOSEC_API fsosec_status fsosec_sweep_run(const fsosec_sweep* sw, fsosec_sweep_result** out) {
    return guarded([&] {
        require(__func__, sw, out);
        *out = nullptr;
        auto r = std::make_unique<fsosec_sweep_result>();
        r->spec = sw->spec;
        r->result = run_sweep(sw->spec);
        for (const CurveResult& c : r->result.curves) {
            r->tables.push_back(sweep_table(r->spec, c));
        }
        *out = r.release();
    });
}

FSOSEC_API void fsosec_sweep_result_free(fsosec_sweep_result* r) { delete r; }

FSOSEC_API size_t fsosec_sweep_result_curve_count(const fsosec_sweep_result* r) {
    return r == nullptr ? 0 : r->tables.size();
}

FSOSEC_API fsosec_status fsosec_sweep_result_curve_name(const fsosec_sweep_result* r, size_t curve, char** out) {
    return guarded([&] {
        require(__func__, r, out);
        if (curve >= r->result.curves.size()) {
            throw BadArgument("curve index out of range");
        }
        *out = dup_string(r->result.curves[curve].name);
    });
}

FSOSEC_API fsosec_status fsosec_sweep_result_row_count(const fsosec_sweep_result* r, size_t curve, size_t* out) {
    return guarded([&] {
        require(__func__, r, out);
        if (curve >= r->tables.size()) {
            throw BadArgument("curve index out of range");
        }
        *out = r->tables[curve].rows.size();
    });
}

FSOSEC_API fsosec_status fsosec_sweep_result_value(const fsosec_sweep_result* r, size_t curve, size_t row,
                                                   const char* column, double* out) {
    return guarded([&] {
        require(__func__, r, column, out);
        if (curve >= r->tables.size() || row >= r->tables[curve].rows.size()) {
            throw BadArgument("curve or row index out of range");
        }
        const Table& t = r->tables[curve];
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (t.columns[c] == column) {
                const double* v = std::get_if<double>(&t.rows[row][c]);
                if (v == nullptr) {
                    throw BadArgument(std::string("column '") + column + "' is not numeric");
                }
                *out = *v;
                return;
            }
        }
        throw BadArgument(std::string("no column '") + column + "'");
    });
}

FSOSEC_API fsosec_status fsosec_sweep_result_render(const fsosec_sweep_result* r, size_t curve,
                                                    fsosec_format format, char** out) {
    return guarded([&] {
        require(__func__, r, out);
        if (curve >= r->tables.size()) {
            throw BadArgument("curve index out of range");
        }
        if (format == FSOSEC_FORMAT_CSV) {
            *out = dup_string(to_csv(r->tables[curve]));
        } else if (format == FSOSEC_FORMAT_JSON) {
            *out = dup_string(to_json(r->tables[curve]));
        } else {
            throw BadArgument("sweep output supports csv or json");
        }
    });
}

FSOSEC_API void fsosec_validation_options_init(fsosec_validation_options* opts) {
    if (opts == nullptr) {
        return;
    }
    static const double kDefaultGrid[] = {0, 10, 20, 30, 40};
    const ValidationOptions d;
    *opts = {};
    opts->mean_snr_d_db = kDefaultGrid;
    opts->mean_snr_d_count = 5;
    opts->mean_snr_e_db = nullptr;
    opts->mean_snr_e_count = 0;
    opts->secrecy_rate = d.secrecy_rate;
    opts->convention = FSOSEC_CONVENTION_PAPER;
    opts->as_printed = 0;
    opts->seed = d.mc.seed;
    opts->samples = d.mc.samples;
    opts->shards = d.mc.shards;
}

FSOSEC_API fsosec_status fsosec_validate(const fsosec_scenario* s, const fsosec_validation_options* opts,
                                         fsosec_validation** out) {
    return guarded([&] {
        require(__func__, s, opts, out);
        *out = nullptr;
        ValidationOptions o;
        if (opts->mean_snr_d_count > 0 && opts->mean_snr_d_db == nullptr) {
            throw BadArgument("mean_snr_d_db is null");
        }
        o.mean_snr_d_db.assign(opts->mean_snr_d_db, opts->mean_snr_d_db + opts->mean_snr_d_count);
        if (opts->mean_snr_e_db != nullptr) {
            o.mean_snr_e_db.assign(opts->mean_snr_e_db, opts->mean_snr_e_db + opts->mean_snr_e_count);
        }
        o.secrecy_rate = opts->secrecy_rate;
        o.convention = to_convention(opts->convention);
        o.form = opts->as_printed ? SopForm::as_printed : SopForm::derived;
        o.mc = McConfig{opts->seed, opts->samples, opts->shards};
        *out = new fsosec_validation{run_validation(s->scenario, o)};
    });
}

FSOSEC_API void fsosec_validation_free(fsosec_validation* v) { delete v; }

FSOSEC_API fsosec_status fsosec_validation_passed(const fsosec_validation* v, int* out) {
    return guarded([&] {
        require(__func__, v, out);
        *out = v->report.passed ? 1 : 0;
    });
}

FSOSEC_API fsosec_status fsosec_validation_render(const fsosec_validation* v, fsosec_format format, char** out) {
    return guarded([&] {
        require(__func__, v, out);
        switch (format) {
        case FSOSEC_FORMAT_CSV:
            *out = dup_string(to_csv(validation_table(v->report)));
            return;
        case FSOSEC_FORMAT_JSON:
            *out = dup_string(to_json(validation_table(v->report)));
            return;
        case FSOSEC_FORMAT_TEXT:
            *out = dup_string(validation_summary(v->report));
            return;
        }
        throw BadArgument("unknown format");
    });
}

FSOSEC_API fsosec_status fsosec_parse_grid(const char* text, double** values, size_t* count) {
    return guarded([&] {
        require(__func__, text, values, count);
        *values = nullptr;
        *count = 0;
        const std::vector<double> grid = parse_grid(text);
        if (grid.empty()) {
            return;
        }
        auto* buf = static_cast<double*>(std::malloc(grid.size() * sizeof(double)));
        if (buf == nullptr) {
            throw std::bad_alloc();
        }
        std::copy(grid.begin(), grid.end(), buf);
        *values = buf;
        *count = grid.size();
    });
}

FSOSEC_API void fsosec_doubles_free(double* values) { std::free(values); }

FSOSEC_API fsosec_status fsosec_ew_pdf(const fsosec_ew_params* p, double irradiance, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        *out = pdf_irradiance(irradiance, to_ew(p));
    });
}

FSOSEC_API fsosec_status fsosec_ew_cdf(const fsosec_ew_params* p, double irradiance, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        *out = cdf_irradiance(irradiance, to_ew(p));
    });
}

FSOSEC_API fsosec_status fsosec_ew_quantile(const fsosec_ew_params* p, double u, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        *out = quantile(u, to_ew(p));
    });
}

FSOSEC_API fsosec_status fsosec_ew_moment(const fsosec_ew_params* p, int n, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        *out = moment(n, to_ew(p));
    });
}

FSOSEC_API fsosec_status fsosec_ew_fit(double scintillation_index, int unit_mean, fsosec_ew_params* out) {
    return guarded([&] {
        require(__func__, out);
        *out = from_ew(fit_ew_params(scintillation_index,
                                     unit_mean ? Normalization::unit_mean : Normalization::unit_second_moment));
    });
}

FSOSEC_API fsosec_status fsosec_turbulence(const fsosec_path* path, double* rytov_variance,
                                           double* scintillation_index) {
    return guarded([&] {
        require(__func__, path, rytov_variance, scintillation_index);
        TurbulencePath p;
        p.wavelength_m = path->wavelength_m;
        p.zenith_angle_rad = path->zenith_angle_rad;
        p.wind_speed_mps = path->wind_speed_mps;
        p.ground_cn2 = path->ground_cn2;
        p.receiver_altitude_m = path->receiver_altitude_m;
        p.transmitter_altitude_m = path->transmitter_altitude_m;
        p.aperture_diameter_m = path->aperture_diameter_m;
        const TurbulenceResult r = derive_turbulence(p);
        *rytov_variance = r.rytov_variance;
        *scintillation_index = r.scintillation_index;
    });
}

FSOSEC_API fsosec_status fsosec_threshold_from_rate(double rate, fsosec_convention convention, double* out) {
    return guarded([&] {
        require(__func__, out);
        *out = threshold_from_rate(rate, to_convention(convention));
    });
}

FSOSEC_API fsosec_status fsosec_sop(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                    double gamma_th, int as_printed, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        const SecrecyQuery q{to_ew(p), mean_snr_d, mean_snr_e, gamma_th};
        *out = sop_closed_form(q, {}, as_printed ? SopForm::as_printed : SopForm::derived).value;
    });
}

FSOSEC_API fsosec_status fsosec_ppsc(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                     int as_printed, double* out) {
    return guarded([&] {
        require(__func__, p, out);
        const SecrecyQuery q{to_ew(p), mean_snr_d, mean_snr_e, 1.0};
        *out = ppsc_closed_form(q, {}, as_printed ? SopForm::as_printed : SopForm::derived).value;
    });
}

FSOSEC_API fsosec_status fsosec_mc_secrecy(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                           double gamma_th, uint64_t seed, uint64_t samples, unsigned shards,
                                           fsosec_mc_result* out) {
    return guarded([&] {
        require(__func__, p, out);
        const SecrecyQuery q{to_ew(p), mean_snr_d, mean_snr_e, gamma_th};
        const McPointEstimate e = estimate_secrecy(q, McConfig{seed, samples, shards});
        *out = {to_c(e.sop_exact), to_c(e.sop_approximated), to_c(e.ppsc)};
    });
}

FSOSEC_API fsosec_status fsosec_ks_check(const fsosec_ew_params* sample_from, const fsosec_ew_params* reference,
                                         uint64_t n, uint64_t seed, double* statistic, double* critical_1pct) {
    return guarded([&] {
        require(__func__, sample_from, reference, statistic, critical_1pct);
        *statistic = ks_check(to_ew(sample_from), to_ew(reference), n, seed);
        *critical_1pct = ks_critical_value_1pct(n);
    });
}

} // extern "C"
