#pragma once

#include "lgspin/record.hpp"
#include "lgspin/simplex.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lgspin {

/// Weights over the 16 deterministic assignments (Q1,Q2,Q3,Q4) in {+-1}^4.
/// Index layout: bit 3 = Q1, bit 2 = Q2, bit 1 = Q3, bit 0 = Q4; a set bit
/// means outcome +1.
struct JointDistribution16 {
    std::array<double, 16> weights{};

    static int index(int q1, int q2, int q3, int q4) {
        return ((q1 > 0) << 3) | ((q2 > 0) << 2) | ((q3 > 0) << 1) | (q4 > 0);
    }

    /// Outcome (+-1) of Q_{which} (which in 1..4) in assignment idx.
    static int outcome(int idx, int which) {
        return (idx >> (4 - which)) & 1 ? +1 : -1;
    }

    void validate(double tolerance = tol::statistical) const {
        double sum = 0.0;
        for (double w : weights) {
            if (w < -tolerance) {
                throw std::invalid_argument("JointDistribution16: negative weight " +
                                            std::to_string(w));
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > tolerance) {
            throw std::invalid_argument("JointDistribution16: weights sum to " +
                                        std::to_string(sum));
        }
    }
};

namespace detail {

inline PairStatistics marginal_pair(const JointDistribution16& joint, int first, int second) {
    PairStatistics stats{0, 0, 0, 0};
    for (int idx = 0; idx < 16; ++idx) {
        const double w = joint.weights[static_cast<std::size_t>(idx)];
        const int a = JointDistribution16::outcome(idx, first);
        const int b = JointDistribution16::outcome(idx, second);
        if (a == +1) {
            (b == +1 ? stats.p_pp : stats.p_pm) += w;
        } else {
            (b == +1 ? stats.p_mp : stats.p_mm) += w;
        }
    }
    return stats;
}

}  // namespace detail

/// Marginalize a four-time joint distribution onto the measured pairs and
/// singles. Records built this way satisfy every macrorealist criterion by
/// construction.
inline ExperimentRecord record_from_joint(const JointDistribution16& joint) {
    joint.validate();
    ExperimentRecord rec;
    rec.p12 = detail::marginal_pair(joint, 1, 2);
    rec.p23 = detail::marginal_pair(joint, 2, 3);
    rec.p34 = detail::marginal_pair(joint, 3, 4);
    rec.p14 = detail::marginal_pair(joint, 1, 4);
    for (int which = 1; which <= 4; ++which) {
        double plus = 0.0;
        for (int idx = 0; idx < 16; ++idx) {
            if (JointDistribution16::outcome(idx, which) == +1) {
                plus += joint.weights[static_cast<std::size_t>(idx)];
            }
        }
        rec.singles[static_cast<std::size_t>(which - 1)] = plus;
    }
    return rec;
}

/// The eight sign patterns of the four-time LG family, generated by outcome
/// relabelings Q_i -> eps_i Q_i (eps_1 fixed to +1) of the canonical sum
/// C12 + C23 + C34 - C14. Index 0 is the canonical pattern; macrorealism
/// requires every entry <= 2.
inline std::array<double, 8> lg_sums(const ExperimentRecord& rec) {
    const double c12 = correlation_of(rec.p12);
    const double c23 = correlation_of(rec.p23);
    const double c34 = correlation_of(rec.p34);
    const double c14 = correlation_of(rec.p14);
    std::array<double, 8> sums{};
    int slot = 0;
    for (int bits = 0; bits < 8; ++bits) {
        const int e2 = (bits & 4) ? -1 : +1;
        const int e3 = (bits & 2) ? -1 : +1;
        const int e4 = (bits & 1) ? -1 : +1;
        sums[static_cast<std::size_t>(slot++)] =
            e2 * c12 + e2 * e3 * c23 + e3 * e4 * c34 - e4 * c14;
    }
    return sums;
}

/// The eight CH-style expressions
///   p^{..}(Q1 Q2) + p^{..}(Q3 Q2) - p^{..}(Q1 Q4) + p^{..}(Q3 Q4)
///   - p(Q3) - p(Q2)
/// under outcome relabelings (eps_1 fixed to +1; flipping every outcome
/// leaves the value unchanged). Index 0 is the canonical all-plus instance;
/// macrorealism requires every entry in [-1, 0].
inline std::array<double, 8> lgch_values(const ExperimentRecord& rec) {
    std::array<double, 8> values{};
    int slot = 0;
    for (int bits = 0; bits < 8; ++bits) {
        const int e1 = +1;
        const int e2 = (bits & 4) ? -1 : +1;
        const int e3 = (bits & 2) ? -1 : +1;
        const int e4 = (bits & 1) ? -1 : +1;
        values[static_cast<std::size_t>(slot++)] =
            rec.p12.joint(e1, e2) + rec.p23.joint(e2, e3) - rec.p14.joint(e1, e4) +
            rec.p34.joint(e3, e4) - rec.single(3, e3) - rec.single(2, e2);
    }
    return values;
}

struct NsitReport {
    bool ok = true;
    double worst_deviation = 0.0;
    std::string worst_marginal;
};

/// No-signaling in time: every single-time marginal must agree between the
/// singles table and each pair that measures it. Reports the worst absolute
/// deviation and where it occurs.
inline NsitReport nsit_check(const ExperimentRecord& rec, double tolerance = 1e-8) {
    struct Estimate {
        double value;
        const char* source;
    };
    NsitReport report;
    for (int which = 1; which <= 4; ++which) {
        std::vector<Estimate> estimates;
        switch (which) {
            case 1:
                estimates = {{rec.p12.marginal_plus(0), "pair(1,2)"},
                             {rec.p14.marginal_plus(0), "pair(1,4)"},
                             {rec.singles[0], "singles"}};
                break;
            case 2:
                estimates = {{rec.p12.marginal_plus(1), "pair(1,2)"},
                             {rec.p23.marginal_plus(0), "pair(2,3)"},
                             {rec.singles[1], "singles"}};
                break;
            case 3:
                estimates = {{rec.p23.marginal_plus(1), "pair(2,3)"},
                             {rec.p34.marginal_plus(0), "pair(3,4)"},
                             {rec.singles[2], "singles"}};
                break;
            default:
                estimates = {{rec.p34.marginal_plus(1), "pair(3,4)"},
                             {rec.p14.marginal_plus(1), "pair(1,4)"},
                             {rec.singles[3], "singles"}};
                break;
        }
        for (std::size_t a = 0; a < estimates.size(); ++a) {
            for (std::size_t b = a + 1; b < estimates.size(); ++b) {
                const double dev = std::abs(estimates[a].value - estimates[b].value);
                if (dev > report.worst_deviation) {
                    report.worst_deviation = dev;
                    report.worst_marginal = "Q" + std::to_string(which) + ": " +
                                            estimates[a].source + " vs " + estimates[b].source;
                }
            }
        }
    }
    report.ok = report.worst_deviation <= tolerance;
    return report;
}

/// LP rows of the noninvasive-realist feasibility problem: normalization
/// plus the pair joints relaxed to +-tolerance bands. As equalities only 12
/// of the 16 joints are independent, but all four per pair are banded so a
/// returned witness reproduces every joint within the tolerance.
inline std::vector<simplex::Row> nirm_constraint_rows(const ExperimentRecord& rec,
                                                      double tolerance) {
    std::vector<simplex::Row> rows;
    std::vector<double> ones(16, 1.0);
    rows.push_back({ones, simplex::Relation::Equal, 1.0});

    const std::array<std::pair<std::pair<int, int>, const PairStatistics*>, 4> pairs = {{
        {{1, 2}, &rec.p12},
        {{2, 3}, &rec.p23},
        {{3, 4}, &rec.p34},
        {{1, 4}, &rec.p14},
    }};
    const std::array<std::pair<int, int>, 4> outcomes = {
        {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
    for (const auto& [indices, stats] : pairs) {
        for (const auto& [a, b] : outcomes) {
            std::vector<double> coeffs(16, 0.0);
            for (int idx = 0; idx < 16; ++idx) {
                if (JointDistribution16::outcome(idx, indices.first) == a &&
                    JointDistribution16::outcome(idx, indices.second) == b) {
                    coeffs[static_cast<std::size_t>(idx)] = 1.0;
                }
            }
            const double target = stats->joint(a, b);
            rows.push_back({coeffs, simplex::Relation::LessEq, target + tolerance});
            rows.push_back({coeffs, simplex::Relation::GreaterEq, target - tolerance});
        }
    }
    return rows;
}

struct NirmCertificate {
    int lgch_index = -1;        // most violated CH-style expression
    double lgch_value = 0.0;
    double lgch_violation = 0.0;  // distance outside [-1, 0]
    std::vector<double> farkas;   // per-row multipliers over nirm_constraint_rows
    double farkas_gap = 0.0;
};

enum class NirmStatus { Feasible, Infeasible, NsitPreconditionFailed };

struct NirmResult {
    NirmStatus status = NirmStatus::Feasible;
    std::optional<JointDistribution16> witness;
    std::optional<NirmCertificate> certificate;
    NsitReport nsit;
};

/// Fine-theorem feasibility oracle: does a distribution over the 16
/// deterministic four-time assignments reproduce every measured pair joint
/// within the tolerance band? Requires NSIT to hold first (otherwise the
/// singles are ambiguous and the question is ill-posed). Feasible verdicts
/// carry a witness distribution; infeasible verdicts carry a separating
/// certificate together with the most violated CH-style inequality.
inline NirmResult nirm_feasibility(const ExperimentRecord& rec, double tolerance = 1e-8) {
    NirmResult result;
    result.nsit = nsit_check(rec, tolerance);
    if (!result.nsit.ok) {
        result.status = NirmStatus::NsitPreconditionFailed;
        return result;
    }

    const std::vector<simplex::Row> rows = nirm_constraint_rows(rec, tolerance);
    const simplex::FeasibilityResult lp = simplex::phase1_feasibility(16, rows);
    if (lp.feasible) {
        result.status = NirmStatus::Feasible;
        JointDistribution16 witness;
        double sum = 0.0;
        for (int idx = 0; idx < 16; ++idx) {
            witness.weights[static_cast<std::size_t>(idx)] =
                std::max(lp.x[static_cast<std::size_t>(idx)], 0.0);
            sum += witness.weights[static_cast<std::size_t>(idx)];
        }
        for (double& w : witness.weights) w /= sum;
        result.witness = witness;
        return result;
    }

    result.status = NirmStatus::Infeasible;
    NirmCertificate cert;
    cert.farkas = lp.farkas;
    cert.farkas_gap = lp.infeasibility;
    const std::array<double, 8> chs = lgch_values(rec);
    for (int k = 0; k < 8; ++k) {
        const double value = chs[static_cast<std::size_t>(k)];
        const double violation = std::max(value - 0.0, -1.0 - value);
        if (violation > cert.lgch_violation) {
            cert.lgch_violation = violation;
            cert.lgch_value = value;
            cert.lgch_index = k;
        }
    }
    result.certificate = cert;
    return result;
}

/// Evaluate a certificate against the record it came from: the Farkas
/// multipliers must separate the record from the assignment polytope, i.e.
/// y^T A <= 0 on every assignment column while y^T b > 0.
inline bool certificate_is_valid(const ExperimentRecord& rec, const NirmCertificate& cert,
                                 double tolerance = 1e-8) {
    const std::vector<simplex::Row> rows = nirm_constraint_rows(rec, tolerance);
    if (cert.farkas.size() != rows.size()) return false;
    double gap = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) gap += cert.farkas[i] * rows[i].rhs;
    if (gap <= 0.0) return false;
    for (int j = 0; j < 16; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            dot += cert.farkas[i] * rows[i].coeffs[static_cast<std::size_t>(j)];
        }
        if (dot > tol::statistical * 10.0) return false;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].rel == simplex::Relation::LessEq && cert.farkas[i] > tol::statistical) {
            return false;
        }
        if (rows[i].rel == simplex::Relation::GreaterEq && cert.farkas[i] < -tol::statistical) {
            return false;
        }
    }
    return true;
}

struct MacrorealismVerdict {
    std::array<double, 8> lg{};
    std::array<double, 8> lgch{};
    NsitReport nsit;
    NirmResult nirm;
    bool lg_satisfied = false;    // every LG variant <= 2
    bool lgch_satisfied = false;  // every CH-style value in [-1, 0]
    bool macrorealist = false;    // noninvasive realist model exists
};

inline MacrorealismVerdict certify_record(const ExperimentRecord& rec,
                                          double tolerance = 1e-8) {
    rec.validate();
    MacrorealismVerdict verdict;
    verdict.lg = lg_sums(rec);
    verdict.lgch = lgch_values(rec);
    verdict.nsit = nsit_check(rec, tolerance);
    verdict.nirm = nirm_feasibility(rec, tolerance);
    verdict.lg_satisfied = true;
    for (double k : verdict.lg) verdict.lg_satisfied &= (k <= 2.0 + tolerance);
    verdict.lgch_satisfied = true;
    for (double s : verdict.lgch) {
        verdict.lgch_satisfied &= (s <= 0.0 + tolerance) && (s >= -1.0 - tolerance);
    }
    verdict.macrorealist = verdict.nirm.status == NirmStatus::Feasible;
    return verdict;
}

struct EquivalenceReport {
    bool lg_all_and_nsit = false;        // all 8 LG variants <= 2, NSIT holds
    bool lg_canonical_and_nsit = false;  // canonical LG only
    bool lgch_in_range = false;          // all 8 CH-style values in [-1, 0]
    bool nirm_feasible = false;
    bool agree = false;            // three-way agreement, all-variant reading
    bool agree_canonical = false;  // agreement when LG means the canonical sum only
    double k_max = 0.0;
    double lgch_max = 0.0;
};

/// Cross-check the three macrorealism criteria on one record. By Fine's
/// construction the all-variant LG reading, the CH-style family and LP
/// feasibility coincide on NSIT-consistent records; the canonical-only LG
/// reading is weaker and its agreement flag is reported separately.
inline EquivalenceReport equivalence_audit(const ExperimentRecord& rec,
                                           double tolerance = 1e-8) {
    EquivalenceReport report;
    const MacrorealismVerdict verdict = certify_record(rec, tolerance);
    report.k_max = *std::max_element(verdict.lg.begin(), verdict.lg.end());
    report.lgch_max = *std::max_element(verdict.lgch.begin(), verdict.lgch.end());
    report.lg_all_and_nsit = verdict.lg_satisfied && verdict.nsit.ok;
    report.lg_canonical_and_nsit = (verdict.lg[0] <= 2.0 + tolerance) && verdict.nsit.ok;
    report.lgch_in_range = verdict.lgch_satisfied;
    report.nirm_feasible = verdict.nirm.status == NirmStatus::Feasible;
    report.agree = (report.lg_all_and_nsit == report.lgch_in_range) &&
                   (report.lgch_in_range == report.nirm_feasible);
    report.agree_canonical = (report.lg_canonical_and_nsit == report.lgch_in_range) &&
                             (report.lgch_in_range == report.nirm_feasible);
    return report;
}

}  // namespace lgspin
