#ifndef PBOPS_ADMISSIBLE_HPP
#define PBOPS_ADMISSIBLE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pbops/function_spec.hpp"
#include "pbops/series_ops.hpp"

namespace pbops {

/// Least positive root of f', located by a 2048-step sign-bracketing scan
/// followed by bisection to relative tolerance 1e-14.
inline double find_critical_xi(const FunctionSpec& spec, double search_limit = 10.0) {
    if (!(search_limit > 0)) throw parameter_error("find_critical_xi: search_limit must be > 0");
    const int steps = 2048;
    const double step = search_limit / steps;
    double a = step * 1e-6; // stay off 0, where f' > 0 for every supported family
    double fa = spec.deriv(a);
    double b = 0, fb = 0;
    bool bracketed = false;
    for (int i = 1; i <= steps; ++i) {
        b = i * step;
        fb = spec.deriv(b);
        if (fa == 0.0) return a;
        if (fa * fb <= 0.0) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!bracketed)
        throw not_admissible_error("find_critical_xi: no sign change of f' in (0, " +
                                   std::to_string(search_limit) + ") for " + spec.name());
    while ((b - a) > 1e-14 * std::max(1.0, b)) {
        const double mid = 0.5 * (a + b);
        const double fm = spec.deriv(mid);
        if (fm == 0.0) return mid;
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

struct AdmissibilityReport {
    double xi = 0;               // least positive critical point of f
    double f_xi = 0;             // f(xi), the inverse's convergence radius
    double radius_est = 0;       // root-test estimate of that radius
    double identity_partial = 0; // sum_{k<=N} phi_k f(xi)^k
    double residual = 0;         // xi - identity_partial, >= 0 for class-P f
};

/// Combines the critical-point search, inversion to order N, the radius
/// estimate and the partial sum of the inverse evaluated at f(xi).  Works on
/// the rescaled inverse series so N can be large (10^4 and beyond for the
/// families with an online recurrence).
inline AdmissibilityReport admissibility_report(const FunctionSpec& spec, int N) {
    AdmissibilityReport rep;
    rep.xi = find_critical_xi(spec);
    rep.f_xi = spec.eval(rep.xi);
    const double rho = rep.f_xi;

    std::vector<double> b;
    if (spec.family == Family::zexpm && spec.m == 1) {
        b = scaled_tree_coeffs(rho, N);
    } else if (spec.family == Family::zpow) {
        b = scaled_zpow_inverse_coeffs(spec.n, rho, N);
    } else {
        // Generic path: invert f/rho directly.  O(N^3), so keep N moderate here.
        PowerSeries<double> fs = spec.taylor<double>(N);
        PowerSeries<double> scaled(N);
        for (int k = 0; k <= N; ++k) scaled[k] = fs[k] / rho;
        b = lagrange_invert(scaled, N).coeffs();
    }

    double sum = 0.0, comp = 0.0; // Kahan
    for (std::size_t k = 1; k < b.size(); ++k) {
        const double y = b[k] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    rep.identity_partial = sum;
    rep.residual = rep.xi - sum;
    rep.radius_est = rho * radius_estimate(PowerSeries<double>(std::move(b)));
    return rep;
}

// ---------------------------------------------------------------------------
// Sharp threshold constants.
// ---------------------------------------------------------------------------

enum class ThresholdFamily {
    esterle_n,    // n^n/(n+1)^{n+1}
    esterle2,     // (1 - n/m)(n/m)^{n/(m-n)}
    power_m,      // (me)^{-1/m}
    expdiff,      // (s-1) s^{-s/(s-1)}
    sinclair_sin, // 2 e^{-s arctan(1/s)} / sqrt(1+s^2)
    gorin,        // 2 sin(pi/(c+1))
};

struct ThresholdKind {
    ThresholdFamily kind;
    int n = 0;
    int m = 0;
    double s = 0;
    double c = 0;

    static ThresholdKind esterle_n(int n) {
        if (n < 1) throw parameter_error("esterle_n: n must be >= 1");
        return {ThresholdFamily::esterle_n, n};
    }
    static ThresholdKind esterle2(int n, int m) {
        if (n < 1 || m <= n) throw parameter_error("esterle2: need m > n >= 1");
        return {ThresholdFamily::esterle2, n, m};
    }
    static ThresholdKind power_m(int m) {
        if (m < 1) throw parameter_error("power_m: m must be >= 1");
        return {ThresholdFamily::power_m, 0, m};
    }
    static ThresholdKind expdiff(double s) {
        if (!(s > 1)) throw parameter_error("expdiff threshold: need s > 1");
        return {ThresholdFamily::expdiff, 0, 0, s};
    }
    static ThresholdKind sinclair_sin(double s) {
        if (!(s >= 0)) throw parameter_error("sinclair_sin: need s >= 0");
        return {ThresholdFamily::sinclair_sin, 0, 0, s};
    }
    static ThresholdKind gorin(double c) {
        if (!(c > 1)) throw parameter_error("gorin: need c > 1");
        return {ThresholdFamily::gorin, 0, 0, 0, c};
    }
};

inline double threshold(const ThresholdKind& k) {
    switch (k.kind) {
        case ThresholdFamily::esterle_n:
            return std::pow(static_cast<double>(k.n), k.n) / std::pow(k.n + 1.0, k.n + 1);
        case ThresholdFamily::esterle2: {
            const double r = static_cast<double>(k.n) / k.m;
            return (1.0 - r) * std::pow(r, static_cast<double>(k.n) / (k.m - k.n));
        }
        case ThresholdFamily::power_m:
            return std::pow(k.m * std::numbers::e, -1.0 / k.m);
        case ThresholdFamily::expdiff:
            return (k.s - 1.0) * std::pow(k.s, -k.s / (k.s - 1.0));
        case ThresholdFamily::sinclair_sin:
            return 2.0 * std::exp(-k.s * std::atan(1.0 / k.s)) / std::sqrt(1.0 + k.s * k.s);
        case ThresholdFamily::gorin:
            return 2.0 * std::sin(std::numbers::pi / (k.c + 1.0));
    }
    return 0;
}

/// Cross-check: the closed-form constant against f evaluated at the
/// numerically located critical point of the matching function family.
/// For sinclair_sin the threshold carries a factor 2 relative to f(xi);
/// gorin is checked against |1 - e^{2 pi i/(c+1)}| directly.
inline double threshold_consistency(const ThresholdKind& k) {
    const double th = threshold(k);
    switch (k.kind) {
        case ThresholdFamily::esterle_n: {
            const auto f = FunctionSpec::zpow(k.n);
            return std::abs(f.eval(find_critical_xi(f)) - th);
        }
        case ThresholdFamily::esterle2: {
            const auto f = FunctionSpec::powdiff(k.n, k.m);
            return std::abs(f.eval(find_critical_xi(f)) - th);
        }
        case ThresholdFamily::power_m: {
            const auto f = FunctionSpec::zexpm(k.m);
            return std::abs(f.eval(find_critical_xi(f)) - th);
        }
        case ThresholdFamily::expdiff: {
            const auto f = FunctionSpec::expdiff(k.s);
            return std::abs(f.eval(find_critical_xi(f)) - th);
        }
        case ThresholdFamily::sinclair_sin: {
            const auto f = FunctionSpec::expsin(k.s);
            return std::abs(2.0 * f.eval(find_critical_xi(f)) - th);
        }
        case ThresholdFamily::gorin: {
            const std::complex<double> lam =
                std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / (k.c + 1.0)));
            return std::abs(std::abs(1.0 - lam) - th);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Scan certificates.
// ---------------------------------------------------------------------------

enum class ThetaClass {
    cond1,    // some sample strictly exceeds f(xi) + margin
    cond2,    // all samples with t < xi stay strictly below f(xi) - margin
    boundary, // sup within the margin band of f(xi): reported, not a violation
    violation,
};

struct SinclairScan {
    std::vector<std::pair<double, ThetaClass>> per_theta;
    int violations = 0;
    int boundary_count = 0;
    double f_xi = 0;
    double xi = 0;
};

namespace detail {

// Golden-section polish of max_t |f(t e^{i theta})| in log t around a bracket.
inline double refine_max_modulus(const FunctionSpec& spec, double theta, double lo_t, double hi_t) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(lo_t), hi = std::log(hi_t);
    const std::complex<double> dir = std::exp(std::complex<double>(0.0, theta));
    auto val = [&](double logt) { return std::abs(spec.eval(std::exp(logt) * dir)); };
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = val(c), fd = val(d);
    for (int i = 0; i < 80; ++i) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = val(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = val(d);
        }
    }
    return std::max(fc, fd);
}

} // namespace detail

/// For each theta on a uniform grid of (-pi, pi], samples |f(t e^{i theta})|
/// on a log-spaced t grid (polished around the grid argmax) and classifies
/// theta against the two alternatives of the Sinclair-type theorem.
inline SinclairScan sinclair_scan(const FunctionSpec& spec, int theta_count = 1024,
                                  double t_max = 50.0, int t_count = 400,
                                  double margin = 1e-9) {
    if (theta_count < 1 || t_count < 2) throw parameter_error("sinclair_scan: bad grid");
    SinclairScan out;
    out.xi = find_critical_xi(spec);
    out.f_xi = spec.eval(out.xi);

    const double t_min = 1e-3 * std::min(out.xi, 1.0);
    std::vector<double> ts(static_cast<std::size_t>(t_count));
    const double lr = std::log(t_max / t_min);
    for (int i = 0; i < t_count; ++i)
        ts[static_cast<std::size_t>(i)] = t_min * std::exp(lr * i / (t_count - 1));

    for (int j = 0; j < theta_count; ++j) {
        // uniform grid of (-pi, pi]
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / theta_count;
        const std::complex<double> dir = std::exp(std::complex<double>(0.0, theta));
        double sup_all = 0.0, sup_below = 0.0;
        int argmax = 0;
        bool blown_up = false;
        for (int i = 0; i < t_count; ++i) {
            const double t = ts[static_cast<std::size_t>(i)];
            const double v = std::abs(spec.eval(t * dir));
            if (!std::isfinite(v)) {
                blown_up = true; // overflow counts as unbounded growth
                break;
            }
            if (v > sup_all) {
                sup_all = v;
                argmax = i;
            }
            if (t < out.xi) sup_below = std::max(sup_below, v);
        }
        ThetaClass cls;
        if (blown_up) {
            cls = ThetaClass::cond1;
        } else {
            const double lo = ts[static_cast<std::size_t>(std::max(0, argmax - 1))];
            const double hi = ts[static_cast<std::size_t>(std::min(t_count - 1, argmax + 1))];
            sup_all = std::max(sup_all, detail::refine_max_modulus(spec, theta, lo, hi));
            if (sup_all > out.f_xi + margin)
                cls = ThetaClass::cond1;
            else if (sup_below < out.f_xi - margin)
                cls = ThetaClass::cond2;
            else if (sup_below <= out.f_xi + margin)
                cls = ThetaClass::boundary;
            else
                cls = ThetaClass::violation;
        }
        if (cls == ThetaClass::violation) ++out.violations;
        if (cls == ThetaClass::boundary) ++out.boundary_count;
        out.per_theta.emplace_back(theta, cls);
    }
    return out;
}

struct PowerNormConstraint {
    long long exponent; // q
    double bound;       // b, an observed or assumed value of ||I - T^q||
};

struct FeasibilityScan {
    std::vector<std::complex<double>> feasible;
    double radius_step = 0;
    double angle_step = 0;
};

/// Grid certificate for the lambda-system |1 - lambda^q| <= b: returns every
/// surviving lambda on a polar grid over the annulus 1 - eps <= |lambda| <=
/// 1 + eps.  The radius grid always contains 1 and the angle grid is
/// theta_j = 2 pi j / angle_count wrapped to (-pi, pi], so roots of unity with
/// order dividing angle_count are represented exactly.
inline FeasibilityScan lambda_feasibility_scan(const std::vector<PowerNormConstraint>& constraints,
                                               int radii_count = 512, int angle_count = 4096,
                                               double eps = 1e-3) {
    if (constraints.empty()) throw parameter_error("lambda_feasibility_scan: no constraints");
    for (const auto& c : constraints)
        if (c.exponent < 1 || c.bound < 0)
            throw parameter_error("lambda_feasibility_scan: need q >= 1 and b >= 0");
    if (radii_count < 2 || angle_count < 1)
        throw parameter_error("lambda_feasibility_scan: bad grid");

    FeasibilityScan out;
    out.radius_step = 2.0 * eps / (radii_count - 1);
    out.angle_step = 2.0 * std::numbers::pi / angle_count;

    std::vector<double> radii;
    bool has_one = false;
    for (int i = 0; i < radii_count; ++i) {
        const double r = 1.0 - eps + out.radius_step * i;
        radii.push_back(r);
        if (r == 1.0) has_one = true;
    }
    if (!has_one) radii.push_back(1.0);

    for (const double r : radii) {
        const double logr = std::log(r);
        for (int j = 0; j < angle_count; ++j) {
            double theta = out.angle_step * j;
            if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
            bool ok = true;
            for (const auto& c : constraints) {
                const double e = c.exponent * logr;
                if (e > 600.0) { // |lambda^q| overflows: certainly infeasible
                    ok = false;
                    break;
                }
                if (e < -600.0) { // lambda^q ~ 0, so |1 - lambda^q| ~ 1
                    if (1.0 > c.bound) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                const double R = std::exp(e);
                const double qtheta = c.exponent * theta;
                const double mod2 = 1.0 + R * R - 2.0 * R * std::cos(qtheta);
                if (std::sqrt(std::max(0.0, mod2)) > c.bound) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.feasible.push_back(std::polar(r, theta));
        }
    }
    return out;
}

} // namespace pbops

#endif
