// Command-line front end: parameter sweeps over the spin constructions,
// macrorealism certification of recorded four-time statistics, and the
// seeded equivalence audit. Exit codes: 0 success, 1 usage or schema error,
// 2 I/O error, 3 internal numerical failure.

#include "lgspin/scan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace lgspin;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& format) {
    if (format == "csv") return OutputFormat::Csv;
    if (format == "json") return OutputFormat::Json;
    throw usage_error("--format must be csv or json");
}

OddMode parse_odd_mode(const std::string& mode) {
    if (mode == "rabi") return OddMode::Rabi;
    if (mode == "static") return OddMode::Static;
    throw usage_error("--odd-mode must be rabi or static");
}

std::pair<int, int> parse_two_j_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw usage_error("--two-j expects an integer or a min:max range, got '" + text + "'");
    }
}

AngleSchedule parse_schedule(const std::string& text) {
    AngleSchedule schedule;
    std::stringstream stream(text);
    std::string token;
    int count = 0;
    while (std::getline(stream, token, ',')) {
        if (count >= 4) break;
        try {
            schedule.alphas[static_cast<std::size_t>(count++)] = std::stod(token);
        } catch (const std::exception&) {
            throw usage_error("--schedule expects four comma-separated angles, got '" + text +
                              "'");
        }
    }
    if (count != 4) {
        throw usage_error("--schedule expects exactly four comma-separated angles");
    }
    return schedule;
}

/// Emit to --out or stdout; file problems map to exit code 2.
void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::ios_base::failure("cannot open output file: " + out_path);
    }
    out << payload;
    if (!out) {
        throw std::ios_base::failure("failed writing output file: " + out_path);
    }
}

template <typename Result>
std::string render(const Result& result, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        write_csv(result, out);
    } else {
        out << to_json(result).dump(2) << '\n';
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leggett-Garg temporal correlations for arbitrary spin: scans and "
                 "macrorealism certification"};
    app.require_subcommand(1);

    std::string two_j_text = "1:20";
    std::string schedule_text;
    std::string odd_mode_text = "rabi";
    std::string format_text = "csv";
    std::string out_path;
    std::string record_path;
    double lambda_min = 0.5, lambda_max = 1.0, lambda_step = 0.005;
    double tolerance = 1e-8;
    std::uint64_t seed = 20240901;
    int kb_points = 200;
    int audit_random = 1000;
    int audit_quantum = 200;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_text, "Output format: csv or json");
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
        cmd->add_option("--tol", tolerance, "Numerical tolerance for certification");
        cmd->add_option("--seed", seed, "Seed for randomized corpora");
    };

    CLI::App* gp = app.add_subcommand(
        "gp-scan", "LG sum of the block-observable scheme across a spin range");
    gp->add_option("--two-j", two_j_text, "2j value or min:max range (default 1:20)");
    gp->add_option("--schedule", schedule_text,
                   "Four comma-separated angles in radians (default canonical)");
    gp->add_option("--odd-mode", odd_mode_text, "Unpaired-beam treatment: rabi or static");
    add_common(gp);

    CLI::App* kb = app.add_subcommand(
        "kb-scan", "Parity-scheme LG sum K(x) over (0, pi) with its maximum");
    kb->add_option("--points", kb_points, "Grid points (default 200)");
    CLI::Option* kb_two_j_opt =
        kb->add_option("--two-j", two_j_text, "Add the finite-spin column for this 2j");
    add_common(kb);

    CLI::App* unsharp = app.add_subcommand(
        "unsharp-scan", "lambda^2-scaled LG sums with sharpness thresholds");
    unsharp->add_option("--lambda-min", lambda_min, "Lower end of the sharpness grid");
    unsharp->add_option("--lambda-max", lambda_max, "Upper end of the sharpness grid");
    unsharp->add_option("--lambda-step", lambda_step, "Grid step");
    add_common(unsharp);

    CLI::App* certify = app.add_subcommand(
        "certify", "Macrorealism verdict for a recorded four-time data set");
    certify->add_option("record", record_path, "Path to an experiment-record JSON file")
        ->required();
    add_common(certify);

    CLI::App* audit = app.add_subcommand(
        "audit", "Seeded equivalence audit: LG+NSIT vs LG-CH vs LP feasibility");
    audit->add_option("--count", audit_random, "Number of random NSIT-consistent records");
    audit->add_option("--quantum-count", audit_quantum, "Number of quantum-generated records");
    add_common(audit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const OutputFormat format = parse_format(format_text);
        if (gp->parsed()) {
            const auto [lo, hi] = parse_two_j_range(two_j_text);
            const AngleSchedule schedule = schedule_text.empty()
                                               ? AngleSchedule::canonical()
                                               : parse_schedule(schedule_text);
            emit(out_path, render(run_gp_scan(lo, hi, schedule, parse_odd_mode(odd_mode_text)),
                                  format));
        } else if (kb->parsed()) {
            std::optional<int> two_j;
            if (kb_two_j_opt->count() > 0) {
                const auto [lo, hi] = parse_two_j_range(two_j_text);
                if (lo != hi) throw usage_error("kb-scan takes a single --two-j value");
                two_j = lo;
            }
            emit(out_path, render(run_kb_scan(kb_points, two_j), format));
        } else if (unsharp->parsed()) {
            emit(out_path, render(run_unsharp_scan(lambda_min, lambda_max, lambda_step),
                                  format));
        } else if (certify->parsed()) {
            const ExperimentRecord rec = read_record_file(record_path);
            const MacrorealismVerdict verdict = certify_record(rec, tolerance);
            emit(out_path, verdict_to_json(verdict).dump(2) + "\n");
        } else if (audit->parsed()) {
            const AuditResult result = run_audit(audit_random, audit_quantum, seed, tolerance);
            emit(out_path, render(result, format));
            if (result.disagreements != 0) {
                std::cerr << "audit: " << result.disagreements
                          << " record(s) broke the three-way equivalence\n";
                return 3;
            }
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const schema_error& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
