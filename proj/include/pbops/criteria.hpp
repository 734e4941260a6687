#ifndef PBOPS_CRITERIA_HPP
#define PBOPS_CRITERIA_HPP

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pbops/admissible.hpp"
#include "pbops/dense_operator.hpp"
#include "pbops/l1multiplier.hpp"
#include "pbops/seqdiag.hpp"
#include "pbops/series_ops.hpp"
#include "pbops/volterra.hpp"

namespace pbops {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // measured values and tolerances, human-readable
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace detail

/// 1. Exact inverse-series coefficients against the closed forms.
inline CriterionResult criterion_exact_coefficients() {
    CriterionResult r{1, "exact inverse coefficients", true, ""};
    const auto phi = lagrange_invert(FunctionSpec::zexp().taylor<Rational>(20), 20);
    for (int m = 1; m <= 20; ++m) {
        if (phi[m] != lambert_coefficient(m)) {
            r.pass = false;
            r.detail = "z e^z inverse mismatch at m=" + std::to_string(m);
            return r;
        }
    }
    for (int n = 1; n <= 5; ++n) {
        const auto wn = lagrange_invert(discrete_esterle_poly<Rational>(n, 15), 15);
        for (int m = 1; m <= 15; ++m) {
            if (wn[m] != discrete_coefficient(n, m)) {
                r.pass = false;
                r.detail = "discrete inverse mismatch at n=" + std::to_string(n) +
                           ", m=" + std::to_string(m);
                return r;
            }
        }
    }
    r.detail = "all coefficients match exactly (m<=20; n<=5, m<=15), zero tolerance";
    return r;
}

/// 2. Weighted coefficient sums against the radius identities.
inline CriterionResult criterion_radius_sums() {
    CriterionResult r{2, "radius identities (weighted partial sums)", true, ""};
    double sum = 0.0, prev = 0.0;
    bool monotone = true;
    for (int m = 1; m <= 10000; ++m) {
        sum += lambert_weighted_term(m);
        if (sum < prev) monotone = false;
        prev = sum;
    }
    std::string detail = "sum |p_m| e^-m = " + detail::fmt(sum) + " (target [0.99,1])";
    bool ok = monotone && sum >= 0.99 && sum <= 1.0;
    for (int n = 1; n <= 4 && ok; ++n) {
        double s = 0.0, p = 0.0;
        bool mono = true;
        for (int m = 1; m <= 10000; ++m) {
            s += discrete_weighted_term(n, m);
            if (s < p) mono = false;
            p = s;
        }
        const double target = static_cast<double>(n) / (n + 1);
        detail += "; n=" + std::to_string(n) + ": " + detail::fmt(s) + " vs " +
                  detail::fmt(target);
        ok = mono && std::abs(s - target) <= 0.01 && s <= target + 1e-12;
    }
    r.pass = ok;
    r.detail = detail + (monotone ? "; all partial sums monotone" : "; MONOTONICITY BROKEN");
    return r;
}

/// 3. Closed-form threshold constants against critical-point evaluation.
inline CriterionResult criterion_threshold_consistency() {
    CriterionResult r{3, "threshold cross-checks", true, ""};
    double worst = 0.0;
    std::string worst_at = "none";
    auto check = [&](const ThresholdKind& k, const std::string& tag) {
        const double res = threshold_consistency(k);
        if (res > worst) {
            worst = res;
            worst_at = tag;
        }
    };
    for (int n = 1; n <= 6; ++n) check(ThresholdKind::esterle_n(n), "esterle_n " + std::to_string(n));
    for (int n = 1; n <= 6; ++n)
        for (int m = n + 1; m <= 12; ++m)
            check(ThresholdKind::esterle2(n, m),
                  "esterle2 " + std::to_string(n) + "," + std::to_string(m));
    for (int m = 1; m <= 12; ++m) check(ThresholdKind::power_m(m), "power_m " + std::to_string(m));
    for (double s : {1.5, 2.0, 3.0, 5.0}) {
        check(ThresholdKind::expdiff(s), "expdiff " + detail::fmt(s));
        check(ThresholdKind::sinclair_sin(s), "sinclair_sin " + detail::fmt(s));
    }
    for (double c : {2.0, 3.0, 4.0, 5.0}) check(ThresholdKind::gorin(c), "gorin " + detail::fmt(c));
    r.pass = worst <= 1e-12;
    r.detail = "worst residual " + detail::fmt(worst) + " at " + worst_at + " (tolerance 1e-12)";
    return r;
}

/// 4. Functional-calculus identity and the sharp-bound implication over
/// 10^4 seeded nilpotent instances, dims 2-10, n <= 5.
inline CriterionResult criterion_functional_calculus() {
    CriterionResult r{4, "functional-calculus property sweep", true, ""};
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    double worst_residual = 0.0;
    int falsifications = 0;
    int hypothesis_count = 0;

    // Inversion polynomials to the largest needed order, reused across dims.
    std::vector<PowerSeries<double>> fpoly, wpoly;
    for (int n = 1; n <= 5; ++n) {
        fpoly.push_back([&] {
            const auto f = discrete_esterle_poly<Rational>(n, 9);
            PowerSeries<double> d(9);
            for (int k = 0; k <= 9; ++k) d[k] = to_double(f[k]);
            return d;
        }());
        wpoly.push_back([&] {
            const auto w = lagrange_invert(discrete_esterle_poly<Rational>(n, 9), 9);
            PowerSeries<double> d(9);
            for (int k = 0; k <= 9; ++k) d[k] = to_double(w[k]);
            return d;
        }());
    }

    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        const int dim = 2 + i % 9;
        const int n = 1 + i % 5;
        const Matrix upper = random_strict_upper(dim, rng);

        // inverse identity: W_n(f_n(A)) = A, a finite sum for nilpotent A
        DenseOperator a{0.3 * upper, NormKind::induced_one, true};
        const auto fa = apply_entire_series(fpoly[static_cast<std::size_t>(n - 1)], a).op;
        const auto rec = apply_entire_series(wpoly[static_cast<std::size_t>(n - 1)], fa).op;
        const double na = op_norm(a);
        const double res = op_norm(Matrix(rec.mat - a.mat), NormKind::induced_one) /
                           std::max(1.0, na);
        worst_residual = std::max(worst_residual, res);

        // implication: hypothesis at 0.9x threshold must yield the conclusion
        const auto t = scaled_esterle_instance(upper, n, 0.9, NormKind::induced_one);
        const auto rep = esterle_verify(t, n);
        if (rep.hypothesis_holds) {
            ++hypothesis_count;
            if (!rep.conclusion_holds) ++falsifications;
        }
    }
    r.pass = worst_residual <= 1e-9 && falsifications == 0 && hypothesis_count > trials / 2;
    r.detail = "worst inversion residual " + detail::fmt(worst_residual) +
               " (tolerance 1e-9); implication held in " + std::to_string(hypothesis_count) +
               " hypothesis cases, falsified " + std::to_string(falsifications) + " times";
    return r;
}

/// 5. Symbol suprema against the sharp limit constants.
inline CriterionResult criterion_symbol_limits() {
    CriterionResult r{5, "symbol-norm limits", true, ""};
    const double target_m = std::sqrt(2.0) / std::numbers::e;
    const auto sm = symbol_sup(SymbolKind::m_alpha_kind(0.5), 1e4);
    const auto sh = symbol_sup(SymbolKind::h_composite_kind(), 30.0);
    const auto study =
        symbol_limit_study(SymbolKind::h_composite_kind(), {5.0, 10.0, 20.0, 30.0});
    bool args_decreasing = true;
    for (std::size_t i = 1; i < study.args.points.size(); ++i)
        if (std::abs(study.args.points[i].second) >=
            std::abs(study.args.points[i - 1].second))
            args_decreasing = false;
    r.pass = std::abs(sm.sup_value - target_m) <= 0.01 &&
             std::abs(sh.sup_value - 1.0 / std::numbers::e) <= 0.01 && args_decreasing;
    r.detail = "half-power symbol sup " + detail::fmt(sm.sup_value) + " vs " +
               detail::fmt(target_m) + "; averaged symbol sup " + detail::fmt(sh.sup_value) +
               " vs " + detail::fmt(1.0 / std::numbers::e) + " (tolerance 0.01); |arg| " +
               (args_decreasing ? "decreasing toward 0" : "NOT decreasing");
    return r;
}

/// 6. Discretized semigroup curve bounded by 1/e + 0.1 and dominated by the
/// symbol curve.
inline CriterionResult criterion_discretized_semigroup() {
    CriterionResult r{6, "discretized semigroup bound", true, ""};
    const auto kernel = build_kernel(KernelKind::a_composite_kind(), 512, NormKind::induced_two);
    const std::vector<double> ts{50.0, 100.0, 200.0, 500.0};
    const auto curve = semigroup_norm_curve(kernel, ts);
    bool bounded = true, dominated = true;
    std::string detail;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double kv = curve.points[i].second;
        const double sv = symbol_sup(SymbolKind::h_composite_kind(), ts[i]).sup_value;
        if (kv > 1.0 / std::numbers::e + 0.1) bounded = false;
        if (kv > sv + 0.05) dominated = false;
        detail += (i ? "; " : "") + std::string("t=") + detail::fmt(ts[i]) + ": kernel " +
                  detail::fmt(kv) + ", symbol " + detail::fmt(sv);
    }
    r.pass = bounded && dominated;
    r.detail = detail + " (bound 1/e+0.1, domination margin 0.05)";
    return r;
}

/// 7. Closed-form kernel identities and the log-growth / bounded-difference
/// behaviour of the L1 norms.
inline CriterionResult criterion_l1_counterexample() {
    CriterionResult r{7, "L1 multiplier growth", true, ""};
    double worst_identity = 0.0;
    for (int n = 1; n <= 100; ++n) {
        const auto g1 = MultiplierKernel::g(n + 1);
        const auto g0 = MultiplierKernel::g(n);
        const auto d = MultiplierKernel::d(n);
        for (int i = 0; i < 100000; ++i) {
            const double x = -50.0 + 100.0 * i / 99999.0;
            worst_identity = std::max(
                worst_identity,
                std::abs(kernel_eval(g1, x) - kernel_eval(g0, x) - kernel_eval(d, x)));
        }
    }
    double worst_signed = 0.0;
    for (int n : {4, 16, 64, 256, 1024})
        worst_signed = std::max(
            worst_signed, std::abs(signed_integral(MultiplierKernel::g(n)) - 1.0));

    const auto growth = growth_study({4, 16, 64, 256, 1024});
    double smin = growth.slope_estimates.front(), smax = smin;
    for (double s : growth.slope_estimates) {
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    const double slope_spread = (smax - smin) / smin;

    const auto diffs = diff_study({64, 128, 256, 512, 1024});
    double dmin = diffs.points.front().second, dmax = dmin;
    for (const auto& [n, v] : diffs.points) {
        dmin = std::min(dmin, v);
        dmax = std::max(dmax, v);
    }
    const double diff_spread = (dmax - dmin) / dmin;

    r.pass = worst_identity <= 1e-12 && worst_signed <= 1e-6 && slope_spread <= 0.15 &&
             diff_spread <= 0.10;
    r.detail = "identity residual " + detail::fmt(worst_identity) +
               " (1e-12); signed-integral error " + detail::fmt(worst_signed) +
               " (1e-6); slope spread " + detail::fmt(slope_spread) +
               " (0.15); n*diff-norm spread " + detail::fmt(diff_spread) + " (0.10)";
    return r;
}

/// 8. Scalar bound sequences for the bi-orthogonal construction.
inline CriterionResult criterion_sequence_diagnostics() {
    CriterionResult r{8, "sequence diagnostics", true, ""};
    const auto scan = limsup_scan(SeqBound::diff, 10000, 100000, 200);
    const double tail = scan.tail_max();
    const bool tail_ok = tail <= 1.0 / std::numbers::e + 0.05;

    bool factorial_ok = true;
    double worst_fact = 1.0;
    int fact = 1;
    for (int m = 2; m <= 8; ++m) {
        fact *= m;
        const double v = diff_bound_sum(fact);
        worst_fact = std::min(worst_fact, v);
        if (v < 1.0 / std::numbers::e - 0.01) factorial_ok = false;
    }

    double proj_max = 0.0;
    for (int n = 1; n <= 12; ++n) proj_max = std::max(proj_max, projection_bound_sum(n));
    const bool proj_ok = proj_max <= 2.0;

    r.pass = tail_ok && factorial_ok && proj_ok;
    r.detail = "difference-bound tail max " + detail::fmt(tail) + " vs bound " +
               detail::fmt(1.0 / std::numbers::e + 0.05) + (tail_ok ? "" : " EXCEEDED") +
               "; min value at factorial n " + detail::fmt(worst_fact) + " vs floor " +
               detail::fmt(1.0 / std::numbers::e - 0.01) + "; projection bound max " +
               detail::fmt(proj_max) + " (<= 2)";
    return r;
}

/// 9. Scan certificates: angular classification and the lambda grid scans.
inline CriterionResult criterion_scan_certificates() {
    CriterionResult r{9, "scan certificates", true, ""};
    int total_violations = 0;
    const std::vector<FunctionSpec> specs = {
        FunctionSpec::expsin(0.0), FunctionSpec::expsin(0.5), FunctionSpec::expsin(1.0),
        FunctionSpec::expsin(2.0), FunctionSpec::expdiff(1.5), FunctionSpec::expdiff(2.0),
        FunctionSpec::expdiff(3.0)};
    for (const auto& spec : specs) total_violations += sinclair_scan(spec).violations;

    std::vector<PowerNormConstraint> chernoff;
    long long q = 1;
    for (int k = 0; k <= 20; ++k) {
        chernoff.push_back({q, 0.99});
        q *= 2;
    }
    const auto cscan = lambda_feasibility_scan(chernoff, 512, 4096);
    // uniqueness at grid resolution: with the exponent list capped at 2^20,
    // radii within ~2e-6 of the circle remain feasible at angle 0, so the
    // feasible set must collapse into one grid cell around lambda = 1
    const double cell = 2.0 * std::numbers::pi / 4096.0 + 2e-3 / 511.0;
    bool chernoff_unique = !cscan.feasible.empty();
    double chernoff_spread = 0.0;
    for (const auto& lam : cscan.feasible)
        chernoff_spread =
            std::max(chernoff_spread, std::abs(lam - std::complex<double>(1.0)));
    chernoff_unique = chernoff_unique && chernoff_spread <= cell;

    std::vector<PowerNormConstraint> gorin;
    q = 1;
    for (int k = 0; k <= 6; ++k) {
        gorin.push_back({q, 0.9});
        q *= 6;
    }
    const auto gscan = lambda_feasibility_scan(gorin, 512, 4095);
    const std::complex<double> seventh =
        std::polar(1.0, 2.0 * std::numbers::pi / 7.0);
    bool survivor = false;
    for (const auto& lam : gscan.feasible)
        if (std::abs(lam - seventh) < 1e-9) survivor = true;

    r.pass = total_violations == 0 && chernoff_unique && survivor;
    r.detail = "angular-scan violations " + std::to_string(total_violations) +
               "; doubling-exponent scan: " + std::to_string(cscan.feasible.size()) +
               " feasible points, all within " + detail::fmt(chernoff_spread) +
               " of 1 (cell size " + detail::fmt(cell) + "); " +
               "sixth-power scan " + (survivor ? "keeps" : "MISSES") +
               " the seventh-root survivor (" + std::to_string(gscan.feasible.size()) +
               " feasible points)";
    return r;
}

inline std::vector<CriterionResult> run_suite(const std::string& suite) {
    std::vector<CriterionResult> out;
    auto want = [&](const char* name) { return suite == name || suite == "all"; };
    if (want("series")) {
        out.push_back(criterion_exact_coefficients());
        out.push_back(criterion_radius_sums());
    }
    if (want("admissible")) {
        out.push_back(criterion_threshold_consistency());
        out.push_back(criterion_scan_certificates());
    }
    if (want("matrix")) out.push_back(criterion_functional_calculus());
    if (want("volterra")) {
        out.push_back(criterion_symbol_limits());
        out.push_back(criterion_discretized_semigroup());
    }
    if (want("l1")) out.push_back(criterion_l1_counterexample());
    if (want("seqdiag")) out.push_back(criterion_sequence_diagnostics());
    if (out.empty())
        throw parameter_error("unknown suite: " + suite +
                              " (expected series|admissible|matrix|volterra|l1|seqdiag|all)");
    return out;
}

} // namespace pbops

#endif
