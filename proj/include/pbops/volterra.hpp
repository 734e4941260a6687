#ifndef PBOPS_VOLTERRA_HPP
#define PBOPS_VOLTERRA_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pbops/dense_operator.hpp"
#include "pbops/errors.hpp"
#include "pbops/experiment_series.hpp"

namespace pbops {

// ---------------------------------------------------------------------------
// Fourier symbols of the fractional convolution operators.
// ---------------------------------------------------------------------------

enum class SymbolFamily { m_alpha, h_composite, real_axis_test };

struct SymbolKind {
    SymbolFamily family = SymbolFamily::m_alpha;
    double alpha = 0.5; // used by m_alpha only

    static SymbolKind m_alpha_kind(double a) {
        if (!(a > 0.0 && a <= 1.0))
            throw parameter_error("symbol: alpha must lie in (0,1]");
        return {SymbolFamily::m_alpha, a};
    }
    static SymbolKind h_composite_kind() { return {SymbolFamily::h_composite, 0.0}; }
    static SymbolKind real_axis_kind() { return {SymbolFamily::real_axis_test, 0.0}; }
};

/// m_alpha: principal-branch (1+i xi)^{-alpha}.
/// h_composite: (1 - w^{-1/2}) / log w with w = 1 + i xi, the closed form of
/// the alpha-average of m_alpha over (0, 1/2); the removable singularity at
/// xi = 0 is handled by the series in L = log w for |L| < 1e-4.
inline std::complex<double> symbol_eval(const SymbolKind& kind, double xi) {
    const std::complex<double> w(1.0, xi);
    switch (kind.family) {
        case SymbolFamily::m_alpha:
            return std::exp(-kind.alpha * std::log(w));
        case SymbolFamily::h_composite: {
            const std::complex<double> L = std::log(w);
            if (std::abs(L) < 1e-4) {
                // (1 - e^{-L/2})/L = 1/2 - L/8 + L^2/48 - L^3/384 + ...
                return 0.5 - L / 8.0 + L * L / 48.0 - L * L * L / 384.0;
            }
            return (1.0 - std::exp(-0.5 * L)) / L;
        }
        case SymbolFamily::real_axis_test:
            return {xi, 0.0};
    }
    return {};
}

struct SymbolSup {
    double sup_value = 0;
    double argmax_xi = 0;
    double arg_at_argmax = 0;   // argument of the symbol at the maximizer
    bool boundary_flag = false; // argmax sat at the grid edge: grid too small
};

namespace detail {

inline double weighted_modulus(const SymbolKind& kind, double t, double xi) {
    const std::complex<double> s = symbol_eval(kind, xi);
    const double re = s.real();
    const double e = -t * re;
    if (e > 700.0) return std::numeric_limits<double>::infinity();
    return t * std::abs(s) * std::exp(e);
}

} // namespace detail

/// sup over xi >= 0 of t |sigma(xi)| exp(-t Re sigma(xi)) -- the L2 multiplier
/// norm of t A e^{tA} for the convolution operator with symbol -sigma.  Grid:
/// {0} plus a log-spaced sweep up to xi_max, then golden-section refinement in
/// log xi around the grid argmax.  The maximizer grows roughly like e^{c t}
/// for the averaged symbol, hence the t-dependent default xi_max.
inline SymbolSup symbol_sup(const SymbolKind& kind, double t, int grid = 4096,
                            double xi_max = 0.0) {
    if (!(t > 0.0)) throw parameter_error("symbol_sup: t must be > 0");
    if (xi_max <= 0.0) {
        const double e = std::min(1.2 * t, 36.8); // cap xi_max near 1e16
        // cover both regimes: Re sigma growing like log(xi) (maximizer at
        // xi ~ e^t) and sigma ~ xi itself (maximizer at xi ~ 1/t)
        xi_max = std::min(std::max(std::exp(e), 1e3 / t), 1e16);
    }
    const double xi_min = 1e-10;

    SymbolSup out;
    int best = -1;
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(grid) + 1);
    xs.push_back(0.0);
    for (int i = 0; i < grid; ++i)
        xs.push_back(xi_min * std::pow(xi_max / xi_min, static_cast<double>(i) / (grid - 1)));
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
        const double v = detail::weighted_modulus(kind, t, xs[static_cast<std::size_t>(i)]);
        if (v > out.sup_value) {
            out.sup_value = v;
            best = i;
        }
    }
    out.boundary_flag = (best <= 1 || best >= static_cast<int>(xs.size()) - 1);

    if (best >= 2 && best < static_cast<int>(xs.size()) - 1) {
        // golden-section in log xi on the bracketing interval
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = std::log(xs[static_cast<std::size_t>(best - 1)]);
        double b = std::log(xs[static_cast<std::size_t>(best + 1)]);
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = detail::weighted_modulus(kind, t, std::exp(c));
        double fd = detail::weighted_modulus(kind, t, std::exp(d));
        for (int it = 0; it < 60; ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc;
                c = b - inv_phi * (b - a);
                fc = detail::weighted_modulus(kind, t, std::exp(c));
            } else {
                a = c; c = d; fc = fd;
                d = a + inv_phi * (b - a);
                fd = detail::weighted_modulus(kind, t, std::exp(d));
            }
        }
        const double xi_star = std::exp(0.5 * (a + b));
        const double v = detail::weighted_modulus(kind, t, xi_star);
        if (v > out.sup_value) out.sup_value = v;
        out.argmax_xi = xi_star;
    } else {
        out.argmax_xi = best >= 0 ? xs[static_cast<std::size_t>(best)] : 0.0;
    }
    out.arg_at_argmax = std::arg(symbol_eval(kind, out.argmax_xi));
    return out;
}

struct SymbolLimitStudy {
    ExperimentSeries sup_values;   // (t, sup)
    ExperimentSeries args;         // (t, arg sigma at argmax)
    std::vector<SymbolSup> detail; // full per-t records
    bool any_boundary = false;
};

inline SymbolLimitStudy symbol_limit_study(const SymbolKind& kind,
                                           const std::vector<double>& t_list) {
    for (std::size_t i = 1; i < t_list.size(); ++i)
        if (!(t_list[i] > t_list[i - 1]))
            throw parameter_error("symbol_limit_study: t_list must be increasing");
    SymbolLimitStudy out;
    for (double t : t_list) {
        const SymbolSup s = symbol_sup(kind, t);
        out.sup_values.push(t, s.sup_value);
        out.args.push(t, s.arg_at_argmax);
        out.any_boundary = out.any_boundary || s.boundary_flag;
        out.detail.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nystrom kernel discretizations on [0,1].
// ---------------------------------------------------------------------------

enum class KernelFamily { j_alpha, l_alpha, a_composite };

struct KernelKind {
    KernelFamily family = KernelFamily::j_alpha;
    double alpha = 0.5;

    static KernelKind j_alpha_kind(double a) {
        if (!(a > 0.0 && a < 1.0)) throw parameter_error("kernel: alpha must lie in (0,1)");
        return {KernelFamily::j_alpha, a};
    }
    static KernelKind l_alpha_kind(double a) {
        if (!(a > 0.0 && a < 1.0)) throw parameter_error("kernel: alpha must lie in (0,1)");
        return {KernelFamily::l_alpha, a};
    }
    static KernelKind a_composite_kind() { return {KernelFamily::a_composite, 0.0}; }
};

struct KernelOperator {
    int grid_size = 0;
    double mesh_width = 0;
    KernelKind kind;
    DenseOperator op;
};

namespace detail {

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror).
inline const double gl32_x[16] = {
    0.0483076656877383, 0.1444719615827965, 0.2392873622521371, 0.3318686022821277,
    0.4213512761306353, 0.5068999089322294, 0.5877157572407623, 0.6630442669302152,
    0.7321821187402897, 0.7944837959679424, 0.8493676137325700, 0.8963211557660521,
    0.9349060759377397, 0.9647622555875064, 0.9856115115452684, 0.9972638618494816};
inline const double gl32_w[16] = {
    0.0965400885147278, 0.0956387200792749, 0.0938443990808046, 0.0911738786957639,
    0.0876520930044038, 0.0833119242269467, 0.0781938957870703, 0.0723457941088485,
    0.0658222227763618, 0.0586840934785355, 0.0509980592623762, 0.0428358980222267,
    0.0342738629130214, 0.0253920653092621, 0.0162743947309057, 0.0070186100094701};

/// Integral over one u-cell [lo, hi] of u^{alpha-1}/Gamma(alpha), which is
/// (hi^alpha - lo^alpha)/Gamma(alpha+1) in closed form.
inline double cell_frac_weight(double alpha, double lo, double hi) {
    return (std::pow(hi, alpha) - std::pow(lo, alpha)) / std::tgamma(alpha + 1.0);
}

/// Same cell weight averaged over alpha in (0, 1/2) by 32-point Gauss-Legendre.
inline double cell_composite_weight(double lo, double hi) {
    double acc = 0.0;
    for (int q = 0; q < 16; ++q) {
        const double a1 = 0.25 * (1.0 + gl32_x[q]);
        const double a2 = 0.25 * (1.0 - gl32_x[q]);
        acc += gl32_w[q] * (cell_frac_weight(a1, lo, hi) + cell_frac_weight(a2, lo, hi));
    }
    return 0.25 * acc;
}

} // namespace detail

/// Nystrom matrix of the kernel on a uniform mesh of [0,1] with nodes at the
/// right cell endpoints x_i = i*delta.  The weakly singular factor is
/// integrated exactly per cell; the e^{y-x} damping is taken at cell midpoint.
/// A_COMPOSITE negates and alpha-averages the damped kernel over (0, 1/2).
inline KernelOperator build_kernel(const KernelKind& kind, int grid_size,
                                   NormKind norm_kind = NormKind::induced_two) {
    if (grid_size < 8) throw parameter_error("build_kernel: grid_size must be >= 8");
    const int g = grid_size;
    const double delta = 1.0 / g;
    Matrix a = Matrix::Zero(g, g);

    // Toeplitz: entry (i,j) depends on the distance d = i - j >= 0 only.
    std::vector<double> column(static_cast<std::size_t>(g), 0.0);
    for (int d = 0; d < g; ++d) {
        const double lo = d * delta;
        const double hi = (d + 1) * delta;
        const double mid = 0.5 * (lo + hi);
        double w = 0.0;
        switch (kind.family) {
            case KernelFamily::j_alpha:
                w = detail::cell_frac_weight(kind.alpha, lo, hi);
                break;
            case KernelFamily::l_alpha:
                w = std::exp(-mid) * detail::cell_frac_weight(kind.alpha, lo, hi);
                break;
            case KernelFamily::a_composite:
                w = -std::exp(-mid) * detail::cell_composite_weight(lo, hi);
                break;
        }
        column[static_cast<std::size_t>(d)] = w;
    }
    for (int i = 0; i < g; ++i)
        for (int j = 0; j <= i; ++j) a(i, j) = column[static_cast<std::size_t>(i - j)];

    return {g, delta, kind, DenseOperator{std::move(a), norm_kind, false}};
}

/// t ||K e^{tK}|| per t.
inline ExperimentSeries semigroup_norm_curve(const KernelOperator& kernel,
                                             const std::vector<double>& t_list) {
    ExperimentSeries out;
    for (double t : t_list) {
        if (!(t > 0.0)) throw parameter_error("semigroup_norm_curve: t must be > 0");
        const Matrix e = mat_exp(kernel.op.mat, t);
        const double nrm = op_norm(Matrix(kernel.op.mat * e), kernel.op.norm_kind);
        out.push(t, t * nrm);
    }
    return out;
}

} // namespace pbops

#endif
