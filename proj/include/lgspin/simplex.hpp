#pragma once

#include "lgspin/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace lgspin::simplex {

enum class Relation { LessEq, GreaterEq, Equal };

/// One linear constraint sum_j coeffs[j] x_j (rel) rhs over x >= 0.
struct Row {
    std::vector<double> coeffs;
    Relation rel = Relation::Equal;
    double rhs = 0.0;
};

/// Outcome of a phase-1 feasibility solve.
///
/// Feasible: x is a nonnegative point satisfying every row (within the
/// pivot tolerance). Infeasible: farkas holds one multiplier per input row
/// with y_i <= 0 on LessEq rows, y_i >= 0 on GreaterEq rows, free on Equal
/// rows, such that sum_i y_i coeffs_i <= 0 componentwise while
/// sum_i y_i rhs_i = infeasibility > 0 — a separating hyperplane proving
/// that no nonnegative solution exists.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<double> x;
    double infeasibility = 0.0;
    std::vector<double> farkas;
};

namespace detail {

struct ColumnRef {
    enum Kind { Structural, Slack, Surplus, Artificial } kind = Structural;
    int row = -1;  // owning row for slack/surplus/artificial columns
};

}  // namespace detail

/// Phase-1 simplex for {x >= 0 : rows}: minimizes the total artificial
/// infeasibility with Bland's anti-cycling rule on a dense tableau. The
/// problem sizes here are tiny (tens of rows), so robustness wins over
/// sparsity.
inline FeasibilityResult phase1_feasibility(int n_vars, const std::vector<Row>& input_rows,
                                            double pivot_tol = tol::statistical,
                                            int max_iter = 20000) {
    const int m = static_cast<int>(input_rows.size());
    for (const Row& row : input_rows) {
        if (static_cast<int>(row.coeffs.size()) != n_vars) {
            throw std::invalid_argument("phase1_feasibility: row width mismatch");
        }
    }

    // Standardize: flip rows to nonnegative rhs, then append slack /
    // surplus / artificial columns.
    std::vector<std::vector<double>> a(m, std::vector<double>(n_vars));
    std::vector<double> b(m);
    std::vector<Relation> rel(m);
    std::vector<int> flip(m, +1);
    for (int i = 0; i < m; ++i) {
        a[i] = input_rows[i].coeffs;
        b[i] = input_rows[i].rhs;
        rel[i] = input_rows[i].rel;
        if (b[i] < 0.0) {
            flip[i] = -1;
            b[i] = -b[i];
            for (double& c : a[i]) c = -c;
            if (rel[i] == Relation::LessEq) {
                rel[i] = Relation::GreaterEq;
            } else if (rel[i] == Relation::GreaterEq) {
                rel[i] = Relation::LessEq;
            }
        }
    }

    std::vector<detail::ColumnRef> columns(static_cast<std::size_t>(n_vars));
    std::vector<int> dual_source(m, -1);  // column whose reduced cost recovers y_i
    int n_cols = n_vars;
    auto add_column = [&](detail::ColumnRef::Kind kind, int row) {
        columns.push_back(detail::ColumnRef{kind, row});
        return n_cols++;
    };

    std::vector<int> basis(m, -1);
    std::vector<int> slack_col(m, -1), surplus_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (rel[i] == Relation::LessEq) {
            slack_col[i] = add_column(detail::ColumnRef::Slack, i);
        } else if (rel[i] == Relation::GreaterEq) {
            surplus_col[i] = add_column(detail::ColumnRef::Surplus, i);
        }
    }
    for (int i = 0; i < m; ++i) {
        if (rel[i] == Relation::LessEq) {
            basis[i] = slack_col[i];
            dual_source[i] = slack_col[i];
        } else {
            art_col[i] = add_column(detail::ColumnRef::Artificial, i);
            basis[i] = art_col[i];
            dual_source[i] = art_col[i];
        }
    }

    // Dense tableau rows plus a reduced-cost row for the phase-1 objective.
    std::vector<std::vector<double>> t(m, std::vector<double>(n_cols + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n_vars; ++j) t[i][j] = a[i][j];
        if (slack_col[i] >= 0) t[i][slack_col[i]] = 1.0;
        if (surplus_col[i] >= 0) t[i][surplus_col[i]] = -1.0;
        if (art_col[i] >= 0) t[i][art_col[i]] = 1.0;
        t[i][n_cols] = b[i];
    }
    std::vector<double> cost(n_cols + 1, 0.0);
    for (int i = 0; i < m; ++i) {
        if (art_col[i] >= 0) cost[art_col[i]] = 1.0;  // phase-1 objective
    }
    for (int i = 0; i < m; ++i) {
        if (art_col[i] < 0) continue;
        // Price out the artificial basic variable (cost 1).
        for (int j = 0; j <= n_cols; ++j) cost[j] -= t[i][j];
    }
    // cost[j] now holds the reduced cost of column j; cost[n_cols] = -z.

    auto pivot = [&](int prow, int pcol) {
        const double p = t[prow][pcol];
        for (int j = 0; j <= n_cols; ++j) t[prow][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == prow) continue;
            const double f = t[i][pcol];
            if (f == 0.0) continue;
            for (int j = 0; j <= n_cols; ++j) t[i][j] -= f * t[prow][j];
        }
        const double f = cost[pcol];
        if (f != 0.0) {
            for (int j = 0; j <= n_cols; ++j) cost[j] -= f * t[prow][j];
        }
        basis[prow] = pcol;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        // Bland: entering column is the lowest index with negative reduced cost.
        int entering = -1;
        for (int j = 0; j < n_cols; ++j) {
            if (cost[j] < -pivot_tol) {
                entering = j;
                break;
            }
        }
        if (entering < 0) break;
        int leaving = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t[i][entering] > pivot_tol) {
                const double ratio = t[i][n_cols] / t[i][entering];
                if (leaving < 0 || ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 && basis[i] < basis[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leaving < 0) {
            throw numeric_error("phase1_feasibility: unbounded phase-1 objective");
        }
        pivot(leaving, entering);
        if (iter == max_iter - 1) {
            throw numeric_error("phase1_feasibility: iteration cap reached");
        }
    }

    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (columns[basis[i]].kind == detail::ColumnRef::Artificial) {
            z += t[i][n_cols];
        }
    }

    FeasibilityResult result;
    result.infeasibility = z;
    if (z <= pivot_tol) {
        result.feasible = true;
        result.x.assign(static_cast<std::size_t>(n_vars), 0.0);
        for (int i = 0; i < m; ++i) {
            if (basis[i] < n_vars) {
                result.x[static_cast<std::size_t>(basis[i])] = std::max(t[i][n_cols], 0.0);
            }
        }
        return result;
    }

    // Infeasible: recover the duals y_i from the reduced costs of each
    // row's slack or artificial column, then undo the row flips.
    result.feasible = false;
    result.farkas.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        const int src = dual_source[i];
        const double y_std = columns[src].kind == detail::ColumnRef::Artificial
                                 ? 1.0 - cost[src]
                                 : -cost[src];
        result.farkas[static_cast<std::size_t>(i)] = flip[i] * y_std;
    }

    // Self-check the certificate against the original rows before returning.
    double gap = 0.0;
    for (int i = 0; i < m; ++i) gap += result.farkas[i] * input_rows[i].rhs;
    if (gap <= 0.0) {
        throw numeric_error("phase1_feasibility: invalid certificate (gap <= 0)");
    }
    for (int j = 0; j < n_vars; ++j) {
        double dot = 0.0;
        for (int i = 0; i < m; ++i) dot += result.farkas[i] * input_rows[i].coeffs[j];
        if (dot > pivot_tol * 10.0) {
            throw numeric_error("phase1_feasibility: invalid certificate (A^T y > 0)");
        }
    }
    for (int i = 0; i < m; ++i) {
        const double y = result.farkas[i];
        if ((input_rows[i].rel == Relation::LessEq && y > pivot_tol) ||
            (input_rows[i].rel == Relation::GreaterEq && y < -pivot_tol)) {
            throw numeric_error("phase1_feasibility: invalid certificate (sign condition)");
        }
    }
    return result;
}

}  // namespace lgspin::simplex
