#ifndef PBOPS_L1MULTIPLIER_HPP
#define PBOPS_L1MULTIPLIER_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "pbops/errors.hpp"
#include "pbops/experiment_series.hpp"

namespace pbops {

// ---------------------------------------------------------------------------
// Closed-form convolution kernels behind the multiplier powers: G(n) is the
// inverse transform of m^n, D(n) the inverse transform of m^{n+1} - m^n, so
// G(n+1) - G(n) = D(n) pointwise and the operator norms on L1 are the L1
// norms of these densities.
// ---------------------------------------------------------------------------

enum class KernelRole { g_power, d_difference };

struct MultiplierKernel {
    KernelRole role = KernelRole::g_power;
    int n = 1;

    static MultiplierKernel g(int n) {
        if (n < 1) throw parameter_error("MultiplierKernel: n must be >= 1");
        return {KernelRole::g_power, n};
    }
    static MultiplierKernel d(int n) {
        if (n < 1) throw parameter_error("MultiplierKernel: n must be >= 1");
        return {KernelRole::d_difference, n};
    }
};

/// G(n)(x) = (n x cos x + n^2 sin x) / (pi x (x^2 + n^2))
/// D(n)(x) = ((x^2 - n(n+1)) cos x + (2n+1) x sin x)
///           / (pi (x^2 + n^2)(x^2 + (n+1)^2))
/// Both have removable behavior at 0; for |x| < 1e-4 a degree-4 expansion of
/// the trigonometric numerator avoids the 0/0 cancellation.
inline double kernel_eval(const MultiplierKernel& k, double x) {
    const double n = static_cast<double>(k.n);
    const double x2 = x * x;
    if (k.role == KernelRole::g_power) {
        if (std::abs(x) < 1e-4) {
            // (n cos x + n^2 sinc x) expanded; denominator pi n^2 (1 + x^2/n^2)
            const double num = (n + n * n) - x2 * (n / 2.0 + n * n / 6.0)
                               + x2 * x2 * (n / 24.0 + n * n / 120.0);
            return num / (std::numbers::pi * n * n * (1.0 + x2 / (n * n)));
        }
        return (n * x * std::cos(x) + n * n * std::sin(x))
               / (std::numbers::pi * x * (x2 + n * n));
    }
    const double c = n * (n + 1.0);
    const double den = std::numbers::pi * (x2 + n * n) * (x2 + (n + 1.0) * (n + 1.0));
    if (std::abs(x) < 1e-4) {
        const double b = 2.0 * n + 1.0;
        const double num = -c + x2 * (1.0 + c / 2.0 + b)
                           + x2 * x2 * (-0.5 - c / 24.0 - b / 6.0);
        return num / den;
    }
    return ((x2 - c) * std::cos(x) + (2.0 * n + 1.0) * x * std::sin(x)) / den;
}

/// |kernel(x)| <= C / x^2 for large x, with C read off the closed form:
/// |numerator| <= 1.5 n x for G and <= 1.5 x^2 for D once x >= n + 1.
inline double tail_constant(const MultiplierKernel& k) {
    const double n = static_cast<double>(k.n);
    if (k.role == KernelRole::g_power) return 1.5 * n / std::numbers::pi;
    return 1.5 / std::numbers::pi;
}

namespace detail {

// 15-point Gauss-Kronrod pair on [-1, 1] (Kronrod weights wk over all 15
// nodes xk; embedded 7-point Gauss weights wg over nodes 1,3,...,13).
inline const double gk15_x[15] = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993945, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0,                 0.2077849550078985,
    0.4058451513773972,  0.5860872354676911,  0.7415311855993945,
    0.8648644233597691,  0.9491079123427585,  0.9914553711208126};
inline const double gk15_wk[15] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278, 0.2044329400752989,
    0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
inline const double gk15_wg[7] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

struct QuadBudget {
    long long evals = 0;
    long long cap = 80'000'000;
};

template <class F>
double gk15(const F& f, double a, double b, double& err, QuadBudget& budget) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * gk15_x[i]);
        k += gk15_wk[i] * v;
        if (i % 2 == 1) g += gk15_wg[i / 2] * v;
    }
    budget.evals += 15;
    err = std::abs(k - g) * h;
    return k * h;
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, QuadBudget& budget,
                int depth = 0) {
    double err;
    const double v = gk15(f, a, b, err, budget);
    if (err <= tol || depth >= 30) return v;
    if (budget.evals > budget.cap)
        throw budget_error("l1 quadrature: panel budget exhausted", v);
    const double m = 0.5 * (a + b);
    return adaptive(f, a, m, 0.5 * tol, budget, depth + 1)
           + adaptive(f, m, b, 0.5 * tol, budget, depth + 1);
}

} // namespace detail

/// Integral of |kernel| over the reals: evenness halves the range, panels are
/// aligned to x = k pi/2 so each contains at most a couple of sign changes,
/// zeros are isolated by bisection, each constant-sign piece is integrated
/// signed by adaptive Gauss-Kronrod.  The dropped tail beyond the cutoff is
/// bounded by the analytic envelope estimate C/cutoff (a few parts in 10^3 of
/// the result at the default cutoff); tol controls the quadrature error only.
inline double l1_norm(const MultiplierKernel& k, double tol = 1e-3,
                      long long eval_cap = 80'000'000) {
    if (!(tol > 0.0)) throw parameter_error("l1_norm: tol must be > 0");
    double cutoff = std::max(100.0 * k.n, 1e4);
    const double half_pi = std::numbers::pi / 2.0;
    const long long panels = static_cast<long long>(std::ceil(cutoff / half_pi));
    cutoff = panels * half_pi;

    auto f = [&](double x) { return kernel_eval(k, x); };
    detail::QuadBudget budget;
    budget.cap = eval_cap;
    const double tol_per_len = (tol / 4.0) / cutoff; // half of tol/2 for quadrature
    double total = 0.0, comp = 0.0;
    auto add = [&](double v) { // Kahan accumulation over many panels
        const double y = v - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    };

    try {
        for (long long p = 0; p < panels; ++p) {
            if (budget.evals > budget.cap)
                throw budget_error("l1 quadrature: panel budget exhausted", total);
            const double a = p * half_pi;
            const double b = (p + 1) * half_pi;
            // sign-change scan at 9 points, bisection to isolate zeros
            std::vector<double> cuts{a};
            double prev_x = a, prev_v = f(a);
            for (int i = 1; i <= 8; ++i) {
                const double x = a + (b - a) * i / 8.0;
                const double v = f(x);
                if (prev_v * v < 0.0) {
                    double lo = prev_x, hi = x, flo = prev_v;
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = f(mid);
                        if (flo * fm <= 0.0) hi = mid;
                        else { lo = mid; flo = fm; }
                    }
                    cuts.push_back(0.5 * (lo + hi));
                }
                prev_x = x;
                prev_v = v;
            }
            cuts.push_back(b);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double len = cuts[i + 1] - cuts[i];
                if (len <= 0.0) continue;
                add(std::abs(detail::adaptive(f, cuts[i], cuts[i + 1],
                                              tol_per_len * len, budget)));
            }
        }
    } catch (const budget_error&) {
        throw budget_error("l1_norm: quadrature budget exhausted", 2.0 * total);
    }
    return 2.0 * total; // evenness; dropped tail is below C/cutoff
}

/// Plain signed integral over the reals (no absolute value); self-check
/// against the transform normalization, which forces the value 1 for G(n).
inline double signed_integral(const MultiplierKernel& k, double tol = 1e-7) {
    if (!(tol > 0.0)) throw parameter_error("signed_integral: tol must be > 0");
    // The signed tail is O(C/x^2) *after* integration by parts of the
    // oscillation, so the l1 cutoff rule is more than enough here.
    double cutoff = std::max(100.0 * k.n, 1e4);
    const double half_pi = std::numbers::pi / 2.0;
    const long long panels = static_cast<long long>(std::ceil(cutoff / half_pi));
    auto f = [&](double x) { return kernel_eval(k, x); };
    detail::QuadBudget budget;
    double total = 0.0, comp = 0.0;
    const double tol_per_len = (tol / 4.0) / (panels * half_pi);
    for (long long p = 0; p < panels; ++p) {
        const double v = detail::adaptive(f, p * half_pi, (p + 1) * half_pi,
                                          tol_per_len * half_pi, budget);
        const double y = v - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return 2.0 * total;
}

struct GrowthStudy {
    ExperimentSeries norms;        // (n, l1_norm(G(n)))
    double fit_slope = 0;          // a in a log n + b over the top half
    double fit_intercept = 0;
    double fit_max_residual = 0;
    std::vector<double> slope_estimates; // (N_{n'} - N_n)/log(n'/n), consecutive
};

inline GrowthStudy growth_study(const std::vector<int>& n_list, double tol = 1e-3) {
    if (n_list.size() < 2) throw parameter_error("growth_study: need >= 2 entries");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw parameter_error("growth_study: n_list must be increasing");
    GrowthStudy out;
    for (int n : n_list) out.norms.push(n, l1_norm(MultiplierKernel::g(n), tol));

    const std::size_t m = n_list.size();
    const std::size_t start = m / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(m - start);
    for (std::size_t i = start; i < m; ++i) {
        const double x = std::log(out.norms.points[i].first);
        const double y = out.norms.points[i].second;
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = cnt * sxx - sx * sx;
    if (denom != 0.0) {
        out.fit_slope = (cnt * sxy - sx * sy) / denom;
        out.fit_intercept = (sy - out.fit_slope * sx) / cnt;
    } else { // two identical abscissae cannot happen (strictly increasing)
        out.fit_slope = 0.0;
        out.fit_intercept = sy / cnt;
    }
    for (std::size_t i = start; i < m; ++i) {
        const double pred = out.fit_slope * std::log(out.norms.points[i].first)
                            + out.fit_intercept;
        out.fit_max_residual =
            std::max(out.fit_max_residual, std::abs(out.norms.points[i].second - pred));
    }
    for (std::size_t i = 1; i < m; ++i) {
        const double dl = std::log(static_cast<double>(n_list[i]) / n_list[i - 1]);
        out.slope_estimates.push_back(
            (out.norms.points[i].second - out.norms.points[i - 1].second) / dl);
    }
    return out;
}

/// (n, n * l1_norm(D(n))) with the running max available from the series.
inline ExperimentSeries diff_study(const std::vector<int>& n_list, double tol = 1e-3) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw parameter_error("diff_study: n_list must be increasing");
    ExperimentSeries out;
    for (int n : n_list) out.push(n, n * l1_norm(MultiplierKernel::d(n), tol));
    return out;
}

} // namespace pbops

#endif
