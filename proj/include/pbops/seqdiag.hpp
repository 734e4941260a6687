#ifndef PBOPS_SEQDIAG_HPP
#define PBOPS_SEQDIAG_HPP

#include <cmath>
#include <vector>

#include "pbops/errors.hpp"
#include "pbops/experiment_series.hpp"

namespace pbops {

// ---------------------------------------------------------------------------
// Scalar bound sequences for the bi-orthogonal construction, taken with the
// renormed constant M = 1.  Both sums have certified truncation tails.
// ---------------------------------------------------------------------------

struct TermBreakdown {
    std::vector<std::pair<int, double>> terms; // (k, term value)
};

/// Sum over k >= 1 of (n/k!) e^{-n/k!}.  The summand in log domain is
/// log n - log k! - n/k!; terms with k! > n (ln 1e16 + 1) are below 1e-16
/// relative and are dropped (each remaining term is then under n eps / k!).
inline double diff_bound_sum(int n, TermBreakdown* breakdown = nullptr) {
    if (n < 1) throw parameter_error("diff_bound_sum: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double cut = nd * (std::log(1e16) + 1.0);
    double total = 0.0, comp = 0.0;
    double log_kfact = 0.0; // log k! running
    for (int k = 1;; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        if (std::exp(log_kfact) > cut && k > 1) break;
        const double x_log = log_n - log_kfact; // log(n/k!)
        const double term = std::exp(x_log - std::exp(x_log));
        if (breakdown) breakdown->terms.emplace_back(k, term);
        const double y = term - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

/// Sum_{k<=n} e^{-n!/k!} + Sum_{k>n} n!/k!, the projection-perturbation bound.
/// Ratios n!/k! are built multiplicatively in log domain; the second sum is
/// truncated at k = n + 60, where the ratio is below 1/60! < 1e-16.
inline double projection_bound_sum(int n) {
    if (n < 1) throw parameter_error("projection_bound_sum: n must be >= 1");
    if (n > 12)
        throw parameter_error("projection_bound_sum: n must be <= 12 (factorial range)");
    double total = 0.0;
    // first sum: k = n down to 1, ratio n!/k! = (k+1)(k+2)...n
    double log_ratio = 0.0;
    for (int k = n; k >= 1; --k) {
        total += std::exp(-std::exp(log_ratio));
        log_ratio += std::log(static_cast<double>(k));
    }
    // second sum: k = n+1 .. n+60, ratio n!/k! = 1/((n+1)...k)
    log_ratio = 0.0;
    for (int k = n + 1; k <= n + 60; ++k) {
        log_ratio -= std::log(static_cast<double>(k));
        total += std::exp(log_ratio);
    }
    return total;
}

enum class SeqBound { diff, projection };

/// Evaluates the chosen bound over a range of n (log-spaced for the diff
/// bound, which varies slowly in log n) and reports the sampled sequence.
inline ExperimentSeries limsup_scan(SeqBound which, int n_lo, int n_hi,
                                    int samples = 200) {
    if (n_lo < 1 || n_hi < n_lo) throw parameter_error("limsup_scan: bad n range");
    ExperimentSeries out;
    if (which == SeqBound::projection) {
        for (int n = n_lo; n <= n_hi; ++n) out.push(n, projection_bound_sum(n));
        return out;
    }
    int prev = 0;
    for (int i = 0; i < samples; ++i) {
        const double f = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        int n = static_cast<int>(std::lround(
            n_lo * std::pow(static_cast<double>(n_hi) / n_lo, f)));
        if (n <= prev) n = prev + 1;
        if (n > n_hi) break;
        out.push(n, diff_bound_sum(n));
        prev = n;
    }
    return out;
}

} // namespace pbops

#endif
