// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "impslice/oracle.hpp"
#include "impslice/schema.hpp"
#include "impslice/service.hpp"
#include "impslice/slicer.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::duplicate_variable:
        return exit_status::parse;
    case ErrorKind::unbound_variable:
    case ErrorKind::arithmetic_overflow:
        return exit_status::eval;
    case ErrorKind::fuel_exhausted:
        return exit_status::fuel;
    case ErrorKind::lattice_mismatch:
    case ErrorKind::criterion_mismatch:
    case ErrorKind::join_error:
        return exit_status::mismatch;
    case ErrorKind::size_exceeded:
        return exit_status::size;
    }
    return exit_status::parse;
}

namespace {

struct Config {
    std::string program;
    std::string state;
    std::uint64_t fuel = default_fuel;
    std::string format = "text";
    std::uint64_t bound = default_size_bound;
    std::string criterion;
    std::string partial_program;
    std::string partial_state;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;

    [[nodiscard]] bool json() const { return format == "json"; }
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::parse, "cannot read '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// A flag value naming an existing file stands for its contents; anything
/// else is inline text.
std::string file_or_inline(const std::string& value) {
    std::error_code ec;
    return fs::is_regular_file(value, ec) ? read_file(value) : value;
}

Derivation evaluate(const Config& config) {
    const Command program = parse_command(read_file(config.program));
    const State input = parse_state(file_or_inline(config.state));
    return eval_cmd(input, program, config.fuel);
}

void emit(std::ostream& out, const schema::Json& document) { out << schema::versioned(document).dump(2) << '\n'; }

int cmd_run(const Config& config, std::ostream& out) {
    const Derivation d = evaluate(config);
    if (config.json()) {
        emit(out, {{"output_state", schema::to_json(d.output)}, {"trace_summary", schema::to_json(trace_stats(d))}});
    } else {
        out << render(d.output) << '\n';
    }
    return exit_status::ok;
}

int cmd_trace(const Config& config, std::ostream& out) {
    const Derivation d = evaluate(config);
    if (config.json()) {
        emit(out, {{"program", schema::to_json(d.program)},
                   {"input", schema::to_json(d.input)},
                   {"output", schema::to_json(d.output)},
                   {"trace", schema::to_json(d.trace)}});
    } else {
        out << render_trace(d.trace) << '\n';
    }
    return exit_status::ok;
}

int cmd_bwd(const Config& config, std::ostream& out) {
    const Derivation d = evaluate(config);
    const SliceOutcome slice = backward_slice(d, parse_partial_state(file_or_inline(config.criterion)));
    if (config.json()) {
        schema::Json document = schema::to_json(slice);
        document["program_slice_text"] = render(slice.program_slice);
        emit(out, document);
    } else {
        // Both sections stay parseable: `#` starts a comment.
        out << "# input slice\n" << render(slice.input_slice) << "\n# program slice\n" << render_pretty(slice.program_slice) << '\n';
    }
    return exit_status::ok;
}

int cmd_fwd(const Config& config, std::ostream& out) {
    const Derivation d = evaluate(config);
    const PartialCommand program = parse_partial_command(file_or_inline(config.partial_program));
    const PartialState state = parse_partial_state(file_or_inline(config.partial_state));
    const PartialState result = forward_slice(d, SliceOutcome{state, program});
    if (config.json()) {
        emit(out, {{"partial_output", schema::to_json(result)}});
    } else {
        out << render(result) << '\n';
    }
    return exit_status::ok;
}

void print_report(const CheckReport& report, std::ostream& out) {
    out << "derivation " << report.derivation_id << ": |P| = " << report.input_lattice_size
        << ", |Q| = " << report.output_lattice_size << ", kernel " << report.kernel << ", " << std::fixed
        << std::setprecision(3) << report.wall_seconds << " s\n";
    for (const auto& law : report.laws) {
        out << "  " << std::left << std::setw(20) << law.law << std::setw(8) << (law.holds() ? "holds" : "FAILS")
            << law.checked << ' ' << law.method << '\n';
        if (law.counterexample) {
            out << "    counterexample: " << *law.counterexample << '\n';
        }
    }
}

int cmd_check_file(const Config& config, std::ostream& out) {
    const Derivation d = evaluate(config);
    CheckOptions options;
    options.derivation_id = fs::path(config.program).stem().string();
    options.size_bound = config.bound;
    const CheckReport report = check_connection(d, options);
    if (config.json()) {
        emit(out, schema::to_json(report));
    } else {
        print_report(report, out);
    }
    return report.all_hold() ? exit_status::ok : exit_status::law_violated;
}

// Every `name.imp` in the directory, with its input in `name.state` (empty
// state when absent).
int cmd_check_corpus(const Config& config, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> programs;
    for (const auto& entry : fs::directory_iterator(config.program)) {
        if (entry.is_regular_file() && entry.path().extension() == ".imp") {
            programs.push_back(entry.path());
        }
    }
    std::sort(programs.begin(), programs.end());

    int status = exit_status::ok;
    schema::Json reports = schema::Json::array();
    if (!config.json()) {
        out << std::left << std::setw(24) << "instance" << std::setw(20) << "|P| x |Q|" << std::setw(16) << "verdict"
            << "seconds\n";
    }
    for (const auto& path : programs) {
        const std::string name = path.stem().string();
        fs::path state_path = path;
        state_path.replace_extension(".state");
        std::string verdict;
        std::string sizes = "-";
        double seconds = 0;
        try {
            const Command program = parse_command(read_file(path));
            const State input = parse_state(fs::exists(state_path) ? read_file(state_path) : std::string());
            const Derivation d = eval_cmd(input, program, config.fuel);
            CheckOptions options;
            options.derivation_id = name;
            options.size_bound = config.bound;
            const CheckReport report = check_connection(d, options);
            sizes = std::to_string(report.input_lattice_size) + " x " + std::to_string(report.output_lattice_size);
            seconds = report.wall_seconds;
            verdict = report.all_hold() ? "holds" : "FAILS";
            if (!report.all_hold()) {
                status = exit_status::law_violated;
            }
            reports.push_back(schema::to_json(report));
        } catch (const Error& e) {
            verdict = to_string(e.kind());
            if (status == exit_status::ok) {
                status = exit_code(e.kind());
            }
            schema::Json failed = schema::to_json(e);
            failed["derivation"] = name;
            reports.push_back(failed);
            err << name << ": " << e.what() << '\n';
        }
        if (!config.json()) {
            out << std::left << std::setw(24) << name << std::setw(20) << sizes << std::setw(16) << verdict << std::fixed
                << std::setprecision(3) << seconds << '\n';
        }
    }
    if (config.json()) {
        emit(out, {{"reports", reports}});
    }
    return status;
}

int cmd_check(const Config& config, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    return fs::is_directory(config.program, ec) ? cmd_check_corpus(config, out, err) : cmd_check_file(config, out);
}

int cmd_serve(const Config& config, std::ostream& out, std::ostream& err) {
    ServiceOptions options;
    options.default_bound = config.bound;
    SliceService service(options);
    out << "listening on http://" << config.host << ':' << config.port << '\n' << std::flush;
    if (!serve(service, config.host, config.port, config.static_dir)) {
        err << "impslice: cannot serve on " << config.host << ':' << config.port << '\n';
        return exit_status::parse;
    }
    return exit_status::ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config config;
    CLI::App app{"Dynamic program slicing for Imp: evaluation with traces, forward and backward slicing, and "
                 "exhaustive Galois-connection checks.",
                 "impslice"};
    app.require_subcommand(1);

    const auto add_state = [&](CLI::App* sub) {
        sub->add_option("program", config.program, "Imp program file")->required();
        sub->add_option("--state", config.state, "Input state, inline (\"x = 1, y = 0\") or a file")->required();
        sub->add_option("--fuel", config.fuel, "Command-rule applications before giving up")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* run = app.add_subcommand("run", "Evaluate a program and print the final state");
    add_state(run);
    auto* trace = app.add_subcommand("trace", "Print the evaluation trace with the values read at every variable");
    add_state(trace);
    auto* bwd = app.add_subcommand("bwd", "Backward slice with respect to a partial output state");
    add_state(bwd);
    bwd->add_option("--criterion", config.criterion, "Partial output state, e.g. \"x = _, y = 1\"")->required();
    auto* fwd = app.add_subcommand("fwd", "Forward slice a partial program and partial input along the run");
    add_state(fwd);
    fwd->add_option("--partial-program", config.partial_program, "Partial program, inline or a file")->required();
    fwd->add_option("--partial-state", config.partial_state, "Partial input state, inline or a file")->required();

    auto* check = app.add_subcommand("check", "Exhaustively check the Galois-connection laws of a run");
    check->add_option("program", config.program, "Imp program file, or a directory of name.imp + name.state")
        ->required();
    check->add_option("--state", config.state, "Input state, inline or a file (single program only)");
    check->add_option("--fuel", config.fuel, "Command-rule applications before giving up")->check(CLI::PositiveNumber);
    check->add_option("--bound", config.bound, "Largest |P| x |Q| to enumerate")->check(CLI::PositiveNumber);
    check->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    serve_cmd->add_option("--port", config.port, "TCP port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", config.host, "Address to bind");
    serve_cmd->add_option("--static", config.static_dir, "Directory of static files to serve at /");
    serve_cmd->add_option("--bound", config.bound, "Default bound for check requests")->check(CLI::PositiveNumber);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_status::ok : exit_status::parse;
    }

    try {
        if (run->parsed()) {
            return cmd_run(config, out);
        }
        if (trace->parsed()) {
            return cmd_trace(config, out);
        }
        if (bwd->parsed()) {
            return cmd_bwd(config, out);
        }
        if (fwd->parsed()) {
            return cmd_fwd(config, out);
        }
        if (check->parsed()) {
            return cmd_check(config, out, err);
        }
        return cmd_serve(config, out, err);
    } catch (const Error& e) {
        if (config.json()) {
            err << schema::versioned(schema::to_json(e)).dump() << '\n';
        } else {
            err << "impslice: " << to_string(e.kind()) << ": " << e.what() << '\n';
        }
        return exit_code(e.kind());
    }
}

} // namespace impslice
