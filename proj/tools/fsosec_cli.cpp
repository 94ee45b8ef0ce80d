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

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumeric = 3, kIo = 4 };

struct Failure {
    int code;
};

int exit_code(fsosec_status st) {
    switch (st) {
    case FSOSEC_OK:
        return kOk;
    case FSOSEC_ERR_INVALID_ARGUMENT:
    case FSOSEC_ERR_PARSE:
    case FSOSEC_ERR_VALIDATION:
    case FSOSEC_ERR_NOT_FOUND:
        return kUsage;
    case FSOSEC_ERR_IO:
        return kIo;
    case FSOSEC_ERR_DOMAIN:
    case FSOSEC_ERR_NOT_CONVERGED:
    case FSOSEC_ERR_INTERNAL:
        break;
    }
    return kNumeric;
}

void check(fsosec_status st) {
    if (st != FSOSEC_OK) {
        std::cerr << "fsosec: " << fsosec_status_name(st) << ": " << fsosec_last_error() << "\n";
        throw Failure{exit_code(st)};
    }
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "fsosec: " << msg << "\n";
    throw Failure{kUsage};
}

struct CString {
    char* p = nullptr;
    ~CString() { fsosec_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct ScenarioDeleter {
    void operator()(fsosec_scenario* s) const { fsosec_scenario_free(s); }
};
struct SweepDeleter {
    void operator()(fsosec_sweep* s) const { fsosec_sweep_free(s); }
};
struct ResultDeleter {
    void operator()(fsosec_sweep_result* r) const { fsosec_sweep_result_free(r); }
};
struct ValidationDeleter {
    void operator()(fsosec_validation* v) const { fsosec_validation_free(v); }
};

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("FSOSEC_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "fsosec: cannot write to standard output\n";
            throw Failure{kIo};
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "fsosec: cannot write '" << path << "'\n";
        throw Failure{kIo};
    }
}

std::uint64_t parse_count(const std::string& flag, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || v < 0 || v > 1e18 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
            throw std::invalid_argument(text);
        }
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        usage_error(flag + " expects a nonnegative integer, got '" + text + "'");
    }
}

fsosec_convention parse_convention(const std::string& text) {
    if (text == "paper") {
        return FSOSEC_CONVENTION_PAPER;
    }
    if (text == "shannon") {
        return FSOSEC_CONVENTION_SHANNON;
    }
    usage_error("--threshold-convention expects paper or shannon");
}

std::vector<double> parse_grid(const std::string& text) {
    double* values = nullptr;
    std::size_t n = 0;
    check(fsosec_parse_grid(text.c_str(), &values, &n));
    std::vector<double> out(values, values + n);
    fsosec_doubles_free(values);
    return out;
}

std::unique_ptr<fsosec_scenario, ScenarioDeleter> load_scenario(const std::string& path,
                                                                const std::vector<std::string>& overrides) {
    fsosec_scenario* raw = nullptr;
    check(fsosec_scenario_load_file(path.c_str(), &raw));
    std::unique_ptr<fsosec_scenario, ScenarioDeleter> s(raw);
    for (const auto& o : overrides) {
        check(fsosec_scenario_override(s.get(), o.c_str()));
    }
    check(fsosec_scenario_validate(s.get()));
    return s;
}

struct Options {
    std::string scenario;
    std::string spec;
    std::string format;
    std::string out;
    std::string seed;
    std::string mc_samples;
    unsigned shards = 1;
    std::vector<std::string> overrides;
    std::optional<double> rate;
    std::string convention;
    bool as_printed = false;
    bool with_mc = false;
    bool no_cache = false;
    std::optional<std::string> grid;
    std::optional<std::string> grid_e;
    std::string receiver = "destination";
};

int cmd_channel(const Options& o) {
    const auto s = load_scenario(o.scenario, o.overrides);
    fsosec_receiver receiver = FSOSEC_DESTINATION;
    if (o.receiver == "eavesdropper") {
        receiver = FSOSEC_EAVESDROPPER;
    } else if (o.receiver != "destination") {
        usage_error("--receiver expects destination or eavesdropper");
    }
    const std::string fmt = o.format.empty() ? "text" : o.format;
    if (fmt != "text" && fmt != "json") {
        usage_error("channel --format expects text or json");
    }
    CString text;
    check(fsosec_channel_report(s.get(), receiver, fmt == "json" ? FSOSEC_FORMAT_JSON : FSOSEC_FORMAT_TEXT,
                                &text.p));
    write_output(o.out, text.str());
    return kOk;
}

int cmd_sweep(const Options& o) {
    const std::string fmt = o.format.empty() ? "csv" : o.format;
    if (fmt != "csv" && fmt != "json") {
        usage_error("sweep --format expects csv or json");
    }
    fsosec_sweep* raw = nullptr;
    check(fsosec_sweep_load_file(o.spec.c_str(), &raw));
    std::unique_ptr<fsosec_sweep, SweepDeleter> sw(raw);
    if (!o.seed.empty()) {
        check(fsosec_sweep_set_seed(sw.get(), parse_count("--seed", o.seed)));
    }
    if (!o.mc_samples.empty()) {
        check(fsosec_sweep_set_mc_samples(sw.get(), parse_count("--mc-samples", o.mc_samples)));
    }
    check(fsosec_sweep_set_shards(sw.get(), o.shards));
    if (o.rate) {
        check(fsosec_sweep_set_rate(sw.get(), *o.rate));
    }
    if (!o.convention.empty()) {
        check(fsosec_sweep_set_convention(sw.get(), parse_convention(o.convention)));
    }
    if (o.as_printed) {
        check(fsosec_sweep_set_as_printed(sw.get(), 1));
    }
    if (o.with_mc) {
        check(fsosec_sweep_set_with_mc(sw.get(), 1));
    }
    if (o.no_cache) {
        check(fsosec_sweep_set_cache(sw.get(), 0));
    }
    if (o.grid) {
        check(fsosec_sweep_set_grid(sw.get(), o.grid->c_str()));
    }

    fsosec_sweep_result* rraw = nullptr;
    check(fsosec_sweep_run(sw.get(), &rraw));
    std::unique_ptr<fsosec_sweep_result, ResultDeleter> result(rraw);

    CString name;
    check(fsosec_sweep_name(sw.get(), &name.p));
    const std::filesystem::path dir = o.out.empty() ? default_output_dir() : std::filesystem::path(o.out);
    if (o.out != "-") {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            std::cerr << "fsosec: cannot create '" << dir.string() << "': " << ec.message() << "\n";
            throw Failure{kIo};
        }
    }
    const std::size_t curves = fsosec_sweep_result_curve_count(result.get());
    for (std::size_t c = 0; c < curves; ++c) {
        CString curve;
        CString text;
        check(fsosec_sweep_result_curve_name(result.get(), c, &curve.p));
        check(fsosec_sweep_result_render(result.get(), c, fmt == "json" ? FSOSEC_FORMAT_JSON : FSOSEC_FORMAT_CSV,
                                         &text.p));
        if (o.out == "-") {
            write_output("-", text.str());
        } else {
            const std::string stem = name.str().empty() ? curve.str() : name.str() + "_" + curve.str();
            const auto path = dir / (stem + "." + fmt);
            write_output(path.string(), text.str());
            std::cerr << "wrote " << path.string() << "\n";
        }
    }
    return kOk;
}

int cmd_validate(const Options& o) {
    const auto s = load_scenario(o.scenario, o.overrides);
    fsosec_validation_options opts;
    fsosec_validation_options_init(&opts);
    std::vector<double> grid_d;
    std::vector<double> grid_e;
    if (o.grid) {
        grid_d = parse_grid(*o.grid);
        if (grid_d.empty()) {
            usage_error("--grid is empty");
        }
        opts.mean_snr_d_db = grid_d.data();
        opts.mean_snr_d_count = grid_d.size();
    }
    if (o.grid_e) {
        grid_e = parse_grid(*o.grid_e);
        if (grid_e.empty()) {
            usage_error("--grid-e is empty");
        }
        opts.mean_snr_e_db = grid_e.data();
        opts.mean_snr_e_count = grid_e.size();
    }
    if (!o.seed.empty()) {
        opts.seed = parse_count("--seed", o.seed);
    }
    if (!o.mc_samples.empty()) {
        opts.samples = parse_count("--mc-samples", o.mc_samples);
    }
    opts.shards = o.shards;
    if (o.rate) {
        opts.secrecy_rate = *o.rate;
    }
    if (!o.convention.empty()) {
        opts.convention = parse_convention(o.convention);
    }
    opts.as_printed = o.as_printed ? 1 : 0;

    const std::string fmt = o.format.empty() ? "text" : o.format;
    fsosec_format f = FSOSEC_FORMAT_TEXT;
    if (fmt == "csv") {
        f = FSOSEC_FORMAT_CSV;
    } else if (fmt == "json") {
        f = FSOSEC_FORMAT_JSON;
    } else if (fmt != "text") {
        usage_error("validate --format expects text, csv or json");
    }

    fsosec_validation* raw = nullptr;
    check(fsosec_validate(s.get(), &opts, &raw));
    std::unique_ptr<fsosec_validation, ValidationDeleter> v(raw);
    CString text;
    check(fsosec_validation_render(v.get(), f, &text.p));
    write_output(o.out, text.str());
    int passed = 0;
    check(fsosec_validation_passed(v.get(), &passed));
    return passed ? kOk : kValidationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage and positive secrecy capacity for FSO downlinks"};
    app.set_version_flag("--version", fsosec_version());
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "Output format");
        cmd->add_option("--out", o.out, "Output file (channel, validate) or directory (sweep); - for stdout");
    };
    auto mc_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seed", o.seed, "Monte Carlo seed");
        cmd->add_option("--mc-samples", o.mc_samples, "Monte Carlo sample count");
        cmd->add_option("--shards", o.shards, "Worker threads for Monte Carlo")->check(CLI::PositiveNumber);
        cmd->add_option("--rate", o.rate, "Target secrecy rate R_s in bit/s/Hz");
        cmd->add_option("--threshold-convention", o.convention, "paper (2^{2R}) or shannon (2^{R})");
        cmd->add_flag("--eq11-as-printed", o.as_printed, "Raise the whole bracket to -beta/2 instead of each addend (comparison only)");
    };

    auto* channel = app.add_subcommand("channel", "Derive turbulence, fading and attenuation for one receiver");
    channel->add_option("--scenario", o.scenario, "Scenario file")->required();
    channel->add_option("--override", o.overrides, "KEY=VALUE, repeatable");
    channel->add_option("--receiver", o.receiver, "destination or eavesdropper");
    common(channel);

    auto* sweep = app.add_subcommand("sweep", "Evaluate SOP/PPSC along a parameter grid");
    sweep->add_option("--spec", o.spec, "Sweep spec file")->required();
    sweep->add_option("--grid", o.grid, "Replace the spec grid: a,b,c or start:step:stop");
    sweep->add_flag("--with-mc", o.with_mc, "Add Monte Carlo columns");
    sweep->add_flag("--no-cache", o.no_cache, "Re-derive the channel for every row");
    common(sweep);
    mc_flags(sweep);

    auto* validate = app.add_subcommand("validate", "Check the closed form against Monte Carlo");
    validate->add_option("--scenario", o.scenario, "Scenario file")->required();
    validate->add_option("--override", o.overrides, "KEY=VALUE, repeatable");
    validate->add_option("--grid", o.grid, "Destination mean SNR grid in dB (default 0:10:40)");
    validate->add_option("--grid-e", o.grid_e, "Eavesdropper mean SNR grid in dB (default: scenario value)");
    common(validate);
    mc_flags(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*channel) {
            return cmd_channel(o);
        }
        if (*sweep) {
            return cmd_sweep(o);
        }
        return cmd_validate(o);
    } catch (const Failure& f) {
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "fsosec: " << e.what() << "\n";
        return kNumeric;
    }
}
