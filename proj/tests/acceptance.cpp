// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check pins its tolerance in code; timed criteria
// also enforce their runtime budgets.

#include "lgspin/corpus.hpp"
#include "lgspin/scan.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace lgspin;

namespace {

constexpr double kTwoSqrtTwo = 2.8284271247461903;

struct Harness {
    bool all_ok = true;

    void run(int number, const std::string& label, double time_limit_s,
             const std::function<std::pair<bool, std::string>()>& body) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            std::tie(ok, detail) = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (time_limit_s > 0.0 && seconds > time_limit_s) {
            ok = false;
            detail += " [runtime limit exceeded]";
        }
        std::printf("[%s] criterion %d: %s — %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", number,
                    label.c_str(), detail.c_str(), seconds,
                    time_limit_s > 0.0 ? (" / limit " + std::to_string((int)time_limit_s) + " s").c_str()
                                       : "");
        all_ok &= ok;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

int main() {
    Harness harness;

    harness.run(1, "optimal violation 2*sqrt(2), j-independent, both paths", 10.0, [] {
        double worst_closed = 0.0, worst_beam = 0.0;
        for (int two_j = 1; two_j <= 20; ++two_j) {
            const SpinValue spin(two_j);
            worst_closed = std::max(
                worst_closed, std::abs(gp_lg_sum(spin, AngleSchedule::canonical()) - kTwoSqrtTwo));
            worst_beam = std::max(
                worst_beam,
                std::abs(gp_lg_sum_simulated(spin, AngleSchedule::canonical()) - kTwoSqrtTwo));
        }
        const bool ok = worst_closed < 1e-10 && worst_beam < 1e-10;
        return std::make_pair(ok, "max |K - 2sqrt2|: closed " + fmt(worst_closed) + ", beam " +
                                      fmt(worst_beam) + " (tol 1e-10)");
    });

    harness.run(2, "parity-scheme plateau: argmax and finite-spin simulation", 30.0, [] {
        const ScalarArgmax best = kb_K_argmax();
        const bool argmax_ok =
            std::abs(best.x - 1.054) <= 2e-3 && std::abs(best.value - 2.481) <= 1e-3;
        const SpinValue spin(200);  // j = 100
        const double omega_dt = best.x / spin.dim();
        const double k_sim = 3.0 * kb_simulated_correlation(spin, omega_dt) -
                             kb_simulated_correlation(spin, 3.0 * omega_dt);
        const bool finite_ok = k_sim >= 2.47;
        return std::make_pair(argmax_ok && finite_ok,
                              "x* = " + fmt(best.x) + ", K* = " + fmt(best.value) +
                                  ", simulated K(j=100) = " + fmt(k_sim) + " >= 2.47");
    });

    harness.run(3, "sharpness thresholds and no sub-threshold violation", 0.0, [] {
        // Crossing of 2 for the block scheme, located by bisection on the
        // simulated sweep.
        double lo = 0.5, hi = 1.0;
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = (lo + hi) / 2.0;
            (gp_lg_sum_simulated(SpinValue(1), AngleSchedule::canonical(), mid) < 2.0 ? lo
                                                                                      : hi) = mid;
        }
        const double gp_crossing = (lo + hi) / 2.0;
        const bool gp_ok = std::abs(gp_crossing - 0.8409) <= 1e-4;

        const double kb_max = kb_K_argmax().value;
        lo = 0.5;
        hi = 1.0;
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = (lo + hi) / 2.0;
            (mid * mid * kb_max < 2.0 ? lo : hi) = mid;
        }
        const double kb_crossing = (lo + hi) / 2.0;
        const bool kb_ok = std::abs(kb_crossing - 0.8978) <= 1e-3;

        // Below the block-scheme threshold no LG variant may exceed 2 on a
        // 100-point schedule sweep.
        const double threshold = sharpness_threshold(kTwoSqrtTwo).value();
        Rng rng(1001);
        double worst = -10.0;
        for (int point = 0; point < 100; ++point) {
            const AngleSchedule schedule =
                point == 0 ? AngleSchedule::canonical() : random_schedule(rng);
            const SpinValue spin(rng.uniform_int(1, 10));
            for (double lambda :
                 {0.2, 0.5, 0.7, 0.8, threshold / 2.0, threshold - 1e-6}) {
                const double scale = lambda * lambda;
                const auto& a = schedule.alphas;
                const ExperimentRecord rec = record_from_correlations(
                    scale * gp_correlation_closed(spin, a[0], a[1], +1),
                    scale * gp_correlation_closed(spin, a[1], a[2], +1),
                    scale * gp_correlation_closed(spin, a[2], a[3], +1),
                    scale * gp_correlation_closed(spin, a[0], a[3], -1));
                for (double k : lg_sums(rec)) worst = std::max(worst, k);
            }
        }
        const bool sweep_ok = worst <= 2.0 + 1e-12;
        return std::make_pair(gp_ok && kb_ok && sweep_ok,
                              "crossings " + fmt(gp_crossing) + " (0.8409 +- 1e-4), " +
                                  fmt(kb_crossing) + " (0.8978 +- 1e-3); sub-threshold max K = " +
                                  fmt(worst));
    });

    harness.run(4, "two-time correlations via Heisenberg picture == sequential oracle", 0.0, [] {
        Rng rng(2002);
        double worst = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            const DichotomicObservable obs = test_support::random_qubit_observable(rng);
            const ComplexMatrix u1 = test_support::random_unitary(rng, 2);
            const ComplexMatrix u2 = test_support::random_unitary(rng, 2);
            const double lemma = heisenberg_correlation_2d(obs, u1, u2);
            const double simulated = correlation_of(sequential_pair_statistics(
                maximally_mixed(2), obs, u2 * u1.adjoint(), obs, u1));
            worst = std::max(worst, std::abs(lemma - simulated));
        }
        return std::make_pair(worst < 1e-10,
                              "max deviation " + fmt(worst) + " over 200 triples (tol 1e-10)");
    });

    harness.run(5, "spin-1 zero beam: conditional probabilities and theta1 independence", 0.0, [] {
        Rng rng(3003);
        double worst_cond = 0.0;
        double corr_lo = 2.0, corr_hi = -2.0;
        const double theta2_fixed = 0.83;

        const SpinOperators ops = spin_operators(SpinValue(2));
        ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
        rho0(1, 1) = 1.0;
        ComplexMatrix p_zero = ComplexMatrix::Zero(3, 3);
        p_zero(1, 1) = 1.0;
        const DichotomicObservable obs =
            DichotomicObservable::from_projectors(identity_matrix(3) - p_zero, p_zero);

        for (int iter = 0; iter < 50; ++iter) {
            const double theta1 = rng.uniform(0.05, std::numbers::pi - 0.05);
            const double theta2 = rng.uniform(0.05, std::numbers::pi - 0.05);
            // Conditionals read off the normalized Lueders branches: evolve
            // |m=0>, measure, evolve each branch, measure again.
            const ComplexMatrix u1 = expm_i_hermitian(ops.jy, theta1);
            const ComplexMatrix u2 = expm_i_hermitian(ops.jy, theta2);
            const QuantumState evolved(u1 * rho0 * u1.adjoint());
            const double c2 = std::cos(theta2) * std::cos(theta2);
            const double s2 = std::sin(theta2) * std::sin(theta2);
            for (int outcome : {+1, -1}) {
                const MeasuredBranch branch = luders_sharp(evolved, obs, outcome);
                const ComplexMatrix later =
                    u2 * branch.post.rho() * u2.adjoint();
                const double repeat = (obs.projector(outcome) * later).trace().real();
                const double flip = (obs.projector(-outcome) * later).trace().real();
                worst_cond = std::max({worst_cond, std::abs(repeat - c2), std::abs(flip - s2)});
            }
            const double corr = correlation_of(
                zero_beam_statistics(rng.uniform(0.05, std::numbers::pi - 0.05), theta2_fixed));
            corr_lo = std::min(corr_lo, corr);
            corr_hi = std::max(corr_hi, corr);
        }
        const double spread = corr_hi - corr_lo;
        return std::make_pair(worst_cond < 1e-12 && spread < 1e-12,
                              "max conditional deviation " + fmt(worst_cond) +
                                  ", correlation spread " + fmt(spread) + " (tol 1e-12)");
    });

    harness.run(6, "unsharp lambda^2 law and generalized state update", 0.0, [] {
        Rng rng(4004);
        double worst_scaling = 0.0;
        for (int iter = 0; iter < 50; ++iter) {
            const SpinValue spin(rng.uniform_int(1, 10));  // j <= 5
            const double a1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double a2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double lambda = rng.uniform(0.05, 1.0);
            const double sharp = gp_beam_simulated_correlation(spin, a1, a2, 1.0);
            const double unsharp = gp_beam_simulated_correlation(spin, a1, a2, lambda);
            worst_scaling = std::max(worst_scaling, std::abs(unsharp - lambda * lambda * sharp));
        }

        double worst_update = 0.0;
        const DichotomicObservable sigma_z =
            DichotomicObservable::from_hermitian(gamma_matrices(2).gz);
        for (double lambda : {0.3, 0.7071, 0.95, 1.0}) {
            const UnsharpEffectPair eff = make_unsharp(sigma_z, lambda);
            for (int outcome : {+1, -1}) {
                const MeasuredBranch branch =
                    luders_unsharp(maximally_mixed(2), eff, outcome);
                const ComplexMatrix expected =
                    (identity_matrix(2) + outcome * lambda * gamma_matrices(2).gz) / 2.0;
                worst_update = std::max(worst_update, max_abs(branch.post.rho() - expected));
                worst_update = std::max(worst_update, std::abs(branch.probability - 0.5));
            }
        }
        return std::make_pair(worst_scaling < 1e-10 && worst_update < 1e-12,
                              "max scaling deviation " + fmt(worst_scaling) +
                                  " (tol 1e-10), max update deviation " + fmt(worst_update) +
                                  " (tol 1e-12)");
    });

    harness.run(7, "Fine equivalence on 1000 random + 200 quantum records", 60.0, [] {
        Rng rng(20240901);
        int disagreements = 0;
        int infeasible = 0;
        double worst_witness = 0.0;
        bool certificates_ok = true;
        auto inspect = [&](const ExperimentRecord& rec) {
            const EquivalenceReport report = equivalence_audit(rec, 1e-8);
            if (!report.agree) ++disagreements;
            const NirmResult nirm = nirm_feasibility(rec, 1e-8);
            if (nirm.status == NirmStatus::Feasible) {
                const ExperimentRecord back = record_from_joint(*nirm.witness);
                const std::array<const PairStatistics ExperimentRecord::*, 4> members = {
                    &ExperimentRecord::p12, &ExperimentRecord::p23, &ExperimentRecord::p34,
                    &ExperimentRecord::p14};
                for (auto member : members) {
                    const PairStatistics& a = rec.*member;
                    const PairStatistics& b = back.*member;
                    worst_witness = std::max(
                        {worst_witness, std::abs(a.p_pp - b.p_pp), std::abs(a.p_pm - b.p_pm),
                         std::abs(a.p_mp - b.p_mp), std::abs(a.p_mm - b.p_mm)});
                }
            } else if (nirm.status == NirmStatus::Infeasible) {
                ++infeasible;
                certificates_ok &= certificate_is_valid(rec, *nirm.certificate, 1e-8);
                certificates_ok &= nirm.certificate->lgch_violation > 1e-8;
            }
        };
        for (int i = 0; i < 1000; ++i) inspect(random_nsit_record(rng));
        for (int i = 0; i < 200; ++i) inspect(random_quantum_record(rng));
        const bool ok = disagreements == 0 && certificates_ok &&
                        worst_witness <= 1e-8 + 1e-12 && infeasible > 0;
        return std::make_pair(
            ok, std::to_string(disagreements) + " disagreements, " +
                    std::to_string(infeasible) + " infeasible (all certified), worst witness " +
                    "deviation " + fmt(worst_witness) + " (tol 1e-8)");
    });

    harness.run(8, "LG-CH value and infeasibility at maximal violation", 0.0, [] {
        const double c = 0.7071067811865476;
        const ExperimentRecord rec = record_from_correlations(c, c, c, -c);
        const MacrorealismVerdict verdict = certify_record(rec, 1e-8);
        const double principal = verdict.lgch[0];
        const bool value_ok = std::abs(principal - 0.2071067) <= 1e-6;
        const bool infeasible_ok = verdict.nirm.status == NirmStatus::Infeasible;
        return std::make_pair(value_ok && infeasible_ok,
                              "principal LG-CH = " + fmt(principal) +
                                  " (0.2071067 +- 1e-6), NIRM " +
                                  (infeasible_ok ? "infeasible" : "NOT infeasible"));
    });

    if (!harness.all_ok) {
        std::printf("acceptance: FAILURES PRESENT\n");
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
