#ifndef PBOPS_SERIES_OPS_HPP
#define PBOPS_SERIES_OPS_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "pbops/function_spec.hpp"
#include "pbops/power_series.hpp"

namespace pbops {

struct ClassPResult {
    bool ok = false;
    std::optional<int> first_negative; // index of the first negative coefficient
};

/// Certifies that every coefficient of phi is >= 0.  Exact comparison for
/// Rational coefficients; for double coefficients values down to -tol pass.
template <class T>
ClassPResult class_p_check(const PowerSeries<T>& phi, double tol = 1e-12) {
    if (phi[0] != T(0)) throw parameter_error("class_p_check: phi(0) != 0");
    for (int k = 1; k <= phi.order(); ++k) {
        bool neg;
        if constexpr (std::is_same_v<T, Rational>)
            neg = phi[k] < 0;
        else
            neg = phi[k] < -tol;
        if (neg) return {false, k};
    }
    return {true, std::nullopt};
}

/// Root-test style radius estimate: least-squares fit of log|c_m| against m
/// over the top half of the nonzero coefficients; radius = exp(-slope).
/// An estimate only -- no convergence guarantee.
template <class T>
double radius_estimate(const PowerSeries<T>& phi) {
    const int N = phi.order();
    if (N < 10) throw parameter_error("radius_estimate: order must be >= 10");
    std::vector<double> ms, ys;
    for (int m = N / 2; m <= N; ++m) {
        const double a = std::abs(to_double(phi[m]));
        if (a > 0.0 && std::isfinite(std::log(a))) {
            ms.push_back(static_cast<double>(m));
            ys.push_back(std::log(a));
        }
    }
    if (ms.size() < 2)
        throw undefined_radius_error("radius_estimate: series tail is (numerically) zero");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        sx += ms[i];
        sy += ys[i];
        sxx += ms[i] * ms[i];
        sxy += ms[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::exp(-slope);
}

/// Inverse of F = f/h by the contraction iteration psi <- phi(w h(psi)),
/// where phi is the inverse of f.  Stabilization means two successive
/// truncations agree (exactly in Rational mode, within tol in double mode);
/// coefficient k settles after k rounds so the cap is N+2 iterations.
/// A negative coefficient in the result is reported, not silently returned.
template <class T>
PowerSeries<T> fixed_point_invert(const FunctionSpec& f, const FunctionSpec& h, int N,
                                  double tol = 0.0) {
    const PowerSeries<T> fs = f.taylor<T>(N);
    const PowerSeries<T> hs = h.taylor<T>(N);
    if (!(hs[0] > T(0))) throw parameter_error("fixed_point_invert: h(0) must be > 0");
    for (int k = 1; k <= N; ++k) {
        bool neg;
        if constexpr (std::is_same_v<T, Rational>)
            neg = hs[k] < 0;
        else
            neg = hs[k] < -tol;
        if (neg) throw parameter_error("fixed_point_invert: h has a negative Taylor coefficient");
    }

    const PowerSeries<T> phi = lagrange_invert(fs, N);
    PowerSeries<T> psi(N); // psi_0 = 0
    const int cap = N + 2;
    bool stabilized = false;
    for (int it = 0; it < cap; ++it) {
        // w * h(psi(w)), truncated at N
        const PowerSeries<T> hpsi = compose(hs, psi, N);
        PowerSeries<T> inner(N);
        for (int k = 1; k <= N; ++k) inner[k] = hpsi[k - 1];
        PowerSeries<T> next = compose(phi, inner, N);
        bool same;
        if constexpr (std::is_same_v<T, Rational>) {
            same = (next == psi);
        } else {
            same = true;
            for (int k = 0; k <= N && same; ++k)
                same = std::abs(next[k] - psi[k]) <= tol;
        }
        psi = std::move(next);
        if (same) {
            stabilized = true;
            break;
        }
    }
    if (!stabilized)
        throw convergence_error("fixed_point_invert: iteration did not stabilize within cap");

    const auto cert = class_p_check(psi, tol > 0 ? tol : 1e-12);
    if (!cert.ok)
        throw hypothesis_violation("fixed_point_invert: negative coefficient in inverse series",
                                   static_cast<std::size_t>(*cert.first_negative));
    return psi;
}

// ---------------------------------------------------------------------------
// Large-order machinery.  The inverse series of z e^{-z} and z(1-z)^n satisfy
// psi = w h(psi) with h = e^z resp. (1-z)^{-n}, which gives an O(N^2) online
// recurrence.  Working with the rescaled series beta(w) = psi(rho w) keeps
// every coefficient in [0,1] when rho is at most the convergence radius, so
// orders like 10^4 are reachable without overflow.
// ---------------------------------------------------------------------------

/// Coefficients b_k = psi_k rho^k for the inverse of z e^{-z}.
inline std::vector<double> scaled_tree_coeffs(double rho, int N) {
    std::vector<double> b(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> e(static_cast<std::size_t>(N) + 1, 0.0); // exp(beta)
    e[0] = 1.0;
    for (int k = 1; k <= N; ++k) {
        b[static_cast<std::size_t>(k)] = rho * e[static_cast<std::size_t>(k - 1)];
        double acc = 0.0;
        for (int j = 1; j <= k; ++j)
            acc += j * b[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    return b;
}

/// Coefficients b_k = psi_k rho^k for the inverse of z (1-z)^n, via the
/// J.C.P. Miller recurrence for (1 - beta)^{-n}.
inline std::vector<double> scaled_zpow_inverse_coeffs(int n, double rho, int N) {
    if (n < 1) throw parameter_error("scaled_zpow_inverse_coeffs: n must be >= 1");
    const double p = -static_cast<double>(n); // G = A^p with A = 1 - beta
    std::vector<double> b(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> a(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> g(static_cast<std::size_t>(N) + 1, 0.0);
    a[0] = 1.0;
    g[0] = 1.0;
    for (int k = 1; k <= N; ++k) {
        b[static_cast<std::size_t>(k)] = rho * g[static_cast<std::size_t>(k - 1)];
        a[static_cast<std::size_t>(k)] = -b[static_cast<std::size_t>(k)];
        double acc = 0.0;
        for (int j = 1; j <= k; ++j)
            acc += ((p + 1.0) * j - k) * a[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
        g[static_cast<std::size_t>(k)] = acc / k;
    }
    return b;
}

// Log magnitudes of the closed-form inverse coefficients, for weighted tail
// sums far beyond double range.
inline double log_abs_lambert_coefficient(int m) {
    if (m < 1) throw parameter_error("log_abs_lambert_coefficient: m must be >= 1");
    return (m - 1) * std::log(static_cast<double>(m)) - std::lgamma(static_cast<double>(m) + 1.0);
}

inline double log_abs_discrete_coefficient(int n, int m) {
    if (n < 1 || m < 1) throw parameter_error("log_abs_discrete_coefficient: need n,m >= 1");
    const double top = static_cast<double>(n) * m + m - 1;
    return std::lgamma(top + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(top - m + 1.0)
           - (m - 1) * std::log(static_cast<double>(n)) - std::log(top);
}

/// r_n = (n/(n+1))^{n+1}, the convergence radius of the discrete inverse.
inline double discrete_radius(int n) {
    return std::pow(static_cast<double>(n) / (n + 1), n + 1);
}

/// |p_m| e^{-m}, one term of the continuous radius identity.
inline double lambert_weighted_term(int m) {
    return std::exp(log_abs_lambert_coefficient(m) - m);
}

/// |p_{nm}| r_n^m, one term of the discrete radius identity.
inline double discrete_weighted_term(int n, int m) {
    return std::exp(log_abs_discrete_coefficient(n, m) + m * std::log(discrete_radius(n)));
}

} // namespace pbops

#endif
