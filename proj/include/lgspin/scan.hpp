#pragma once

#include "lgspin/corpus.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lgspin {

enum class OutputFormat { Csv, Json };

/// Fixed 12-significant-digit formatting shared by the CSV and JSON
/// emitters, so scan files are bit-stable across runs.
inline std::string fmt12(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

/// The same value rounded through the 12-digit representation (keeps JSON
/// numbers aligned with the CSV text).
inline double round12(double value) {
    return std::strtod(fmt12(value).c_str(), nullptr);
}

// ---------------------------------------------------------------------------
// gp-scan: LG sum of the block scheme per spin, closed form vs simulation.

struct GpScanRow {
    int two_j = 0;
    double k_closed = 0.0;
    double k_simulated = 0.0;
};

struct GpScanResult {
    std::vector<GpScanRow> rows;
    AngleSchedule schedule;
    OddMode odd_mode = OddMode::Rabi;
};

inline GpScanResult run_gp_scan(int two_j_min, int two_j_max, const AngleSchedule& schedule,
                                OddMode odd_mode = OddMode::Rabi) {
    if (two_j_min < 1 || two_j_max < two_j_min) {
        throw std::invalid_argument("gp-scan: empty or invalid spin range");
    }
    BeamOptions options;
    options.odd_mode = odd_mode;
    GpScanResult result;
    result.schedule = schedule;
    result.odd_mode = odd_mode;
    for (int two_j = two_j_min; two_j <= two_j_max; ++two_j) {
        const SpinValue spin(two_j);
        result.rows.push_back({two_j, gp_lg_sum(spin, schedule),
                               gp_lg_sum_simulated(spin, schedule, 1.0, options)});
    }
    return result;
}

inline void write_csv(const GpScanResult& result, std::ostream& out) {
    out << "two_j,K_closed,K_simulated\n";
    for (const GpScanRow& row : result.rows) {
        out << row.two_j << ',' << fmt12(row.k_closed) << ',' << fmt12(row.k_simulated)
            << '\n';
    }
}

inline nlohmann::json to_json(const GpScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const GpScanRow& row : result.rows) {
        rows.push_back({{"two_j", row.two_j},
                        {"K_closed", round12(row.k_closed)},
                        {"K_simulated", round12(row.k_simulated)}});
    }
    return {{"mode", "gp-scan"},
            {"schedule", result.schedule.alphas},
            {"odd_mode", result.odd_mode == OddMode::Rabi ? "rabi" : "static"},
            {"rows", rows}};
}

// ---------------------------------------------------------------------------
// kb-scan: K(x) over (0, pi) with the located maximum; optionally the
// finite-spin column at the same x grid.

struct KbScanRow {
    double x = 0.0;
    double k = 0.0;
    std::optional<double> k_finite;
};

struct KbScanResult {
    std::vector<KbScanRow> rows;
    ScalarArgmax argmax;
    std::optional<int> two_j;
};

inline KbScanResult run_kb_scan(int points = 200, std::optional<int> two_j = std::nullopt) {
    if (points < 2) {
        throw std::invalid_argument("kb-scan: need at least two grid points");
    }
    KbScanResult result;
    result.two_j = two_j;
    result.argmax = kb_K_argmax();
    for (int i = 1; i <= points; ++i) {
        const double x = std::numbers::pi * i / (points + 1);
        KbScanRow row{x, kb_K(x), std::nullopt};
        if (two_j) {
            const SpinValue spin(*two_j);
            row.k_finite = kb_finite_j_K(spin, x / spin.dim());
        }
        result.rows.push_back(row);
    }
    return result;
}

inline void write_csv(const KbScanResult& result, std::ostream& out) {
    out << (result.two_j ? "x,K,K_finite\n" : "x,K\n");
    for (const KbScanRow& row : result.rows) {
        out << fmt12(row.x) << ',' << fmt12(row.k);
        if (row.k_finite) out << ',' << fmt12(*row.k_finite);
        out << '\n';
    }
    out << "# argmax_x = " << fmt12(result.argmax.x) << '\n';
    out << "# K_max = " << fmt12(result.argmax.value) << '\n';
}

inline nlohmann::json to_json(const KbScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const KbScanRow& row : result.rows) {
        nlohmann::json entry = {{"x", round12(row.x)}, {"K", round12(row.k)}};
        if (row.k_finite) entry["K_finite"] = round12(*row.k_finite);
        rows.push_back(entry);
    }
    nlohmann::json j = {{"mode", "kb-scan"},
                        {"rows", rows},
                        {"argmax", {{"x", round12(result.argmax.x)},
                                    {"K", round12(result.argmax.value)}}}};
    if (result.two_j) j["two_j"] = *result.two_j;
    return j;
}

// ---------------------------------------------------------------------------
// unsharp-scan: lambda^2-scaled LG sums for both schemes, with the
// violation thresholds.

struct UnsharpScanRow {
    double lambda = 0.0;
    double k_gp = 0.0;
    double k_kb = 0.0;
};

struct UnsharpScanResult {
    std::vector<UnsharpScanRow> rows;
    double gp_sharp_max = 0.0;
    double kb_sharp_max = 0.0;
    double gp_threshold = 0.0;
    double kb_threshold = 0.0;
    std::optional<double> gp_grid_crossing;
    std::optional<double> kb_grid_crossing;
};

inline UnsharpScanResult run_unsharp_scan(double lambda_min = 0.5, double lambda_max = 1.0,
                                          double lambda_step = 0.005) {
    if (!(lambda_min > 0.0) || lambda_max > 1.0 + 1e-12 || lambda_max < lambda_min ||
        !(lambda_step > 0.0)) {
        throw std::invalid_argument("unsharp-scan: lambda range must lie in (0, 1]");
    }
    UnsharpScanResult result;
    result.gp_sharp_max = gp_lg_sum(SpinValue(1), AngleSchedule::canonical());
    result.kb_sharp_max = kb_K_argmax().value;
    result.gp_threshold = sharpness_threshold(result.gp_sharp_max).value();
    result.kb_threshold = sharpness_threshold(result.kb_sharp_max).value();
    for (double lambda = lambda_min; lambda <= lambda_max + 1e-12; lambda += lambda_step) {
        const double l = std::min(lambda, 1.0);
        const double scale = l * l;
        UnsharpScanRow row{l, scale * result.gp_sharp_max, scale * result.kb_sharp_max};
        if (!result.gp_grid_crossing && row.k_gp > 2.0) result.gp_grid_crossing = l;
        if (!result.kb_grid_crossing && row.k_kb > 2.0) result.kb_grid_crossing = l;
        result.rows.push_back(row);
    }
    return result;
}

inline void write_csv(const UnsharpScanResult& result, std::ostream& out) {
    out << "lambda,K_gp,K_kb\n";
    for (const UnsharpScanRow& row : result.rows) {
        out << fmt12(row.lambda) << ',' << fmt12(row.k_gp) << ',' << fmt12(row.k_kb) << '\n';
    }
    out << "# gp_threshold = " << fmt12(result.gp_threshold) << '\n';
    out << "# kb_threshold = " << fmt12(result.kb_threshold) << '\n';
    if (result.gp_grid_crossing) {
        out << "# gp_grid_crossing = " << fmt12(*result.gp_grid_crossing) << '\n';
    }
    if (result.kb_grid_crossing) {
        out << "# kb_grid_crossing = " << fmt12(*result.kb_grid_crossing) << '\n';
    }
}

inline nlohmann::json to_json(const UnsharpScanResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const UnsharpScanRow& row : result.rows) {
        rows.push_back({{"lambda", round12(row.lambda)},
                        {"K_gp", round12(row.k_gp)},
                        {"K_kb", round12(row.k_kb)}});
    }
    nlohmann::json j = {{"mode", "unsharp-scan"},
                        {"rows", rows},
                        {"gp_sharp_max", round12(result.gp_sharp_max)},
                        {"kb_sharp_max", round12(result.kb_sharp_max)},
                        {"gp_threshold", round12(result.gp_threshold)},
                        {"kb_threshold", round12(result.kb_threshold)}};
    if (result.gp_grid_crossing) j["gp_grid_crossing"] = round12(*result.gp_grid_crossing);
    if (result.kb_grid_crossing) j["kb_grid_crossing"] = round12(*result.kb_grid_crossing);
    return j;
}

// ---------------------------------------------------------------------------
// certify: full verdict serialization.

inline nlohmann::json verdict_to_json(const MacrorealismVerdict& verdict) {
    auto values = [](const std::array<double, 8>& a) {
        nlohmann::json out = nlohmann::json::array();
        for (double v : a) out.push_back(round12(v));
        return out;
    };
    nlohmann::json nirm;
    switch (verdict.nirm.status) {
        case NirmStatus::Feasible:
            nirm["status"] = "feasible";
            break;
        case NirmStatus::Infeasible:
            nirm["status"] = "infeasible";
            break;
        case NirmStatus::NsitPreconditionFailed:
            nirm["status"] = "nsit-precondition-failed";
            break;
    }
    if (verdict.nirm.witness) {
        nlohmann::json weights = nlohmann::json::array();
        for (double w : verdict.nirm.witness->weights) weights.push_back(round12(w));
        nirm["witness"] = weights;
    }
    if (verdict.nirm.certificate) {
        const NirmCertificate& cert = *verdict.nirm.certificate;
        nlohmann::json farkas = nlohmann::json::array();
        for (double y : cert.farkas) farkas.push_back(round12(y));
        nirm["certificate"] = {{"lgch_index", cert.lgch_index},
                               {"lgch_value", round12(cert.lgch_value)},
                               {"lgch_violation", round12(cert.lgch_violation)},
                               {"farkas_gap", round12(cert.farkas_gap)},
                               {"farkas", farkas}};
    }
    return {{"lg",
             {{"values", values(verdict.lg)},
              {"max", round12(*std::max_element(verdict.lg.begin(), verdict.lg.end()))},
              {"satisfied", verdict.lg_satisfied}}},
            {"lgch",
             {{"values", values(verdict.lgch)},
              {"principal", round12(verdict.lgch[0])},
              {"max", round12(*std::max_element(verdict.lgch.begin(), verdict.lgch.end()))},
              {"satisfied", verdict.lgch_satisfied}}},
            {"nsit",
             {{"ok", verdict.nsit.ok},
              {"worst_deviation", round12(verdict.nsit.worst_deviation)},
              {"worst_marginal", verdict.nsit.worst_marginal}}},
            {"nirm", nirm},
            {"macrorealist", verdict.macrorealist}};
}

// ---------------------------------------------------------------------------
// audit: seeded equivalence sweep over random and quantum-generated records.

struct AuditRow {
    int id = 0;
    std::string kind;
    double k_max = 0.0;
    double lgch_max = 0.0;
    bool lg_all_and_nsit = false;
    bool lg_canonical_and_nsit = false;
    bool lgch_in_range = false;
    bool nirm_feasible = false;
    bool agree = false;
    bool agree_canonical = false;
};

struct AuditResult {
    std::vector<AuditRow> rows;
    int disagreements = 0;
    int canonical_disagreements = 0;  // canonical-only LG reading
    int infeasible = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
};

inline AuditResult run_audit(int random_count, int quantum_count, std::uint64_t seed,
                             double tolerance = 1e-8) {
    if (random_count < 0 || quantum_count < 0 || random_count + quantum_count == 0) {
        throw std::invalid_argument("audit: record counts must be nonnegative and nonzero");
    }
    AuditResult result;
    result.seed = seed;
    result.tolerance = tolerance;
    Rng rng(seed);
    int id = 0;
    auto push = [&](const ExperimentRecord& rec, const char* kind) {
        const EquivalenceReport report = equivalence_audit(rec, tolerance);
        AuditRow row{id++,
                     kind,
                     report.k_max,
                     report.lgch_max,
                     report.lg_all_and_nsit,
                     report.lg_canonical_and_nsit,
                     report.lgch_in_range,
                     report.nirm_feasible,
                     report.agree,
                     report.agree_canonical};
        if (!report.agree) ++result.disagreements;
        if (!report.agree_canonical) ++result.canonical_disagreements;
        if (!report.nirm_feasible) ++result.infeasible;
        result.rows.push_back(row);
    };
    for (int i = 0; i < random_count; ++i) push(random_nsit_record(rng), "random");
    for (int i = 0; i < quantum_count; ++i) push(random_quantum_record(rng), "quantum");
    return result;
}

inline void write_csv(const AuditResult& result, std::ostream& out) {
    out << "id,kind,K_max,lgch_max,lg_pred,lg_canonical_pred,lgch_pred,nirm_pred,agree,"
           "agree_canonical\n";
    for (const AuditRow& row : result.rows) {
        out << row.id << ',' << row.kind << ',' << fmt12(row.k_max) << ','
            << fmt12(row.lgch_max) << ',' << row.lg_all_and_nsit << ','
            << row.lg_canonical_and_nsit << ',' << row.lgch_in_range << ','
            << row.nirm_feasible << ',' << row.agree << ',' << row.agree_canonical << '\n';
    }
    out << "# records = " << result.rows.size() << '\n';
    out << "# disagreements = " << result.disagreements << '\n';
    out << "# canonical_disagreements = " << result.canonical_disagreements << '\n';
    out << "# infeasible = " << result.infeasible << '\n';
}

inline nlohmann::json to_json(const AuditResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const AuditRow& row : result.rows) {
        rows.push_back({{"id", row.id},
                        {"kind", row.kind},
                        {"K_max", round12(row.k_max)},
                        {"lgch_max", round12(row.lgch_max)},
                        {"lg_pred", row.lg_all_and_nsit},
                        {"lg_canonical_pred", row.lg_canonical_and_nsit},
                        {"lgch_pred", row.lgch_in_range},
                        {"nirm_pred", row.nirm_feasible},
                        {"agree", row.agree},
                        {"agree_canonical", row.agree_canonical}});
    }
    return {{"mode", "audit"},
            {"seed", result.seed},
            {"tolerance", result.tolerance},
            {"records", static_cast<int>(result.rows.size())},
            {"disagreements", result.disagreements},
            {"canonical_disagreements", result.canonical_disagreements},
            {"infeasible", result.infeasible},
            {"all_agree", result.disagreements == 0},
            {"rows", rows}};
}

}  // namespace lgspin
