#pragma once

#include "lgspin/spin.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace lgspin {

namespace detail {

/// sin(N theta) / (N sin theta) with the removable singularities at
/// theta = k pi handled by argument reduction and a short series.
inline double dirichlet_ratio(int n, double theta) {
    const double k = std::round(theta / std::numbers::pi);
    const double eps = theta - k * std::numbers::pi;
    const bool flip = (n % 2 == 0) && (static_cast<long long>(k) % 2 != 0);
    const double parity = flip ? -1.0 : 1.0;
    if (std::abs(eps) < 1e-7) {
        const double ne = n * eps;
        return parity * (1.0 - (ne * ne - eps * eps) / 6.0);
    }
    return std::sin(n * theta) / (n * std::sin(theta));
}

}  // namespace detail

/// Closed-form parity-measurement correlation
/// C = sin[(2j+1) w dt] / ((2j+1) sin[w dt]).
inline double kb_correlation_closed(const SpinValue& spin, double omega_dt) {
    return detail::dirichlet_ratio(spin.dim(), omega_dt);
}

/// The same correlation obtained by explicit sequential measurement of the
/// parity observable on the maximally mixed state under exp(-i w dt Jx).
inline double kb_simulated_correlation(const SpinValue& spin, double omega_dt) {
    const DichotomicObservable parity = parity_observable(spin);
    const ComplexMatrix u = expm_i_hermitian(spin_operators(spin).jx, omega_dt);
    const PairStatistics stats =
        sequential_pair_statistics(maximally_mixed(spin.dim()), parity, u, parity);
    return correlation_of(stats);
}

/// Large-spin LG sum K(x) = 3 sin(x)/x - sin(3x)/(3x), x = (2j+1) w dt.
inline double kb_K(double x) {
    if (std::abs(x) < 1e-7) {
        return 2.0 + x * x;  // limit value 2, next order x^2
    }
    return 3.0 * std::sin(x) / x - std::sin(3.0 * x) / (3.0 * x);
}

/// Finite-spin LG sum at equidistant measurement times.
inline double kb_finite_j_K(const SpinValue& spin, double omega_dt) {
    return 3.0 * kb_correlation_closed(spin, omega_dt) -
           kb_correlation_closed(spin, 3.0 * omega_dt);
}

struct ScalarArgmax {
    double x = 0.0;
    double value = 0.0;
};

/// Locate the maximum of a smooth single-peak function on (lo, hi): coarse
/// grid scan followed by golden-section refinement of the bracketing
/// interval down to x-resolution 1e-10.
template <typename F>
ScalarArgmax maximize_scalar(F&& f, double lo, double hi, int grid_points = 10000) {
    double best_x = 0.0;
    double best_v = -std::numeric_limits<double>::infinity();
    int best_i = 1;
    for (int i = 1; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / grid_points;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * (best_i - 1) / grid_points;
    double b = lo + (hi - lo) * (best_i + 1) / grid_points;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = (a + b) / 2.0;
    return ScalarArgmax{x, f(x)};
}

/// argmax of kb_K over (0, pi); lands at x ~ 1.054 with K ~ 2.481.
inline ScalarArgmax kb_K_argmax() {
    return maximize_scalar([](double x) { return kb_K(x); }, 0.0, std::numbers::pi);
}

/// Sharpness threshold lambda* = sqrt(2 / K_max): below it the lambda^2
/// scaled LG sum cannot exceed 2. No threshold exists when K_max <= 2.
inline std::optional<double> sharpness_threshold(double k_max) {
    if (k_max <= 2.0) {
        return std::nullopt;
    }
    return std::sqrt(2.0 / k_max);
}

}  // namespace lgspin
