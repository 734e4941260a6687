#ifndef PBOPS_DENSE_OPERATOR_HPP
#define PBOPS_DENSE_OPERATOR_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "pbops/errors.hpp"
#include "pbops/experiment_series.hpp"
#include "pbops/function_spec.hpp"
#include "pbops/power_series.hpp"

namespace pbops {

using Matrix = Eigen::MatrixXcd;

enum class NormKind { induced_one, induced_two, induced_inf };

/// Finite square complex matrix together with the induced norm it is measured
/// in.  Finite-dimensional stand-in for the operators T and A.
struct DenseOperator {
    Matrix mat;
    NormKind norm_kind = NormKind::induced_two;
    bool nilpotent = false; // structural tag: strictly triangular by construction

    int dim() const { return static_cast<int>(mat.rows()); }
};

inline double op_norm(const Matrix& a, NormKind kind) {
    switch (kind) {
        case NormKind::induced_one:
            return a.cwiseAbs().colwise().sum().maxCoeff();
        case NormKind::induced_inf:
            return a.cwiseAbs().rowwise().sum().maxCoeff();
        case NormKind::induced_two: {
            // Power iteration on A^H A with a deterministic start vector.
            const int n = static_cast<int>(a.rows());
            Eigen::VectorXcd v(n);
            for (int i = 0; i < n; ++i) v(i) = 1.0 + 0.01 * std::cos(static_cast<double>(i));
            v.normalize();
            double lam = 0.0;
            for (int it = 0; it < 20000; ++it) {
                Eigen::VectorXcd w = a.adjoint() * (a * v);
                const double nw = w.norm();
                if (nw == 0.0) return 0.0;
                const double lam_new = nw; // Rayleigh quotient with unit v
                w /= nw;
                const bool done = std::abs(lam_new - lam) <= 1e-12 * std::max(1.0, lam_new);
                lam = lam_new;
                v = std::move(w);
                if (done && it > 2) break;
            }
            return std::sqrt(lam);
        }
    }
    return 0.0;
}

inline double op_norm(const DenseOperator& a) { return op_norm(a.mat, a.norm_kind); }

/// e^{tA} by scaling and squaring around a truncated Taylor core.  The scale
/// keeps ||tA/2^s|| at or below 1/2; terms are added until they fall under
/// 1e-18 relative, which targets ~1e-13 overall accuracy for ||tA|| up to 1e4.
inline Matrix mat_exp(const Matrix& a, double t = 1.0) {
    const int n = static_cast<int>(a.rows());
    Matrix b = t * a;
    const double nrm = b.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(nrm)) throw overflow_error("mat_exp: non-finite input norm");
    int s = 0;
    if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    b /= std::pow(2.0, s);

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 60; ++k) {
        term = (term * b) / static_cast<double>(k);
        result += term;
        const double tn = term.cwiseAbs().maxCoeff();
        if (tn < 1e-18 * result.cwiseAbs().maxCoeff()) break;
    }
    for (int i = 0; i < s; ++i) {
        result = result * result;
        if (!result.allFinite()) throw overflow_error("mat_exp: overflow while squaring");
    }
    return result;
}

inline DenseOperator mat_exp(const DenseOperator& a, double t = 1.0) {
    return {mat_exp(a.mat, t), a.norm_kind, false};
}

struct SeriesApplyResult {
    DenseOperator op;
    bool truncated = false;    // series order was not enough for a non-nilpotent A
    double remainder_bound = 0; // crude bound ||c_{K}|| ||A||^{K} on the first dropped term
};

/// sum_k c_k A^k by Horner over matrices.  For a nilpotent-tagged A the sum is
/// finite: terms of degree >= dim vanish, so only min(order, dim-1) terms enter.
inline SeriesApplyResult apply_entire_series(const PowerSeries<double>& coeffs,
                                             const DenseOperator& a) {
    const int n = a.dim();
    int top = coeffs.order();
    SeriesApplyResult out;
    if (a.nilpotent) {
        top = std::min(top, n - 1);
    } else if (coeffs.order() < n) {
        out.truncated = true;
        const double na = op_norm(a.mat, NormKind::induced_one);
        out.remainder_bound = std::pow(na, coeffs.order() + 1);
    }
    Matrix acc = Matrix::Zero(n, n);
    for (int k = top; k >= 1; --k) {
        acc = acc * a.mat;
        acc.diagonal().array() += coeffs[k];
    }
    acc = acc * a.mat;
    acc.diagonal().array() += coeffs[0];
    out.op = {std::move(acc), a.norm_kind, a.nilpotent};
    return out;
}

struct EsterleReport {
    bool hypothesis_holds = false; // ||T^{n+1} - T^n|| <= n^n/(n+1)^{n+1}
    bool conclusion_holds = false; // ||T - I|| <= 1/(n+1)
    double diff_norm = 0;
    double threshold = 0;
    double t_minus_i_norm = 0;
    double conclusion_bound = 0;
    double inversion_residual = 0; // ||W_n(n(T^{n+1}-T^n)) - n(T-I)||
};

/// Checks the discrete sharp-bound implication for a structural T = I + N
/// (unit diagonal, strictly upper triangular N, so sigma(T) = {1} exactly),
/// and evaluates the functional-calculus identity as a finite sum.
inline EsterleReport esterle_verify(const DenseOperator& t_op, int n) {
    if (n < 1) throw parameter_error("esterle_verify: n must be >= 1");
    const int d = t_op.dim();
    for (int i = 0; i < d; ++i) {
        if (t_op.mat(i, i) != std::complex<double>(1.0))
            throw parameter_error("esterle_verify: diagonal must be exactly 1");
        for (int j = 0; j < i; ++j)
            if (t_op.mat(i, j) != std::complex<double>(0.0))
                throw parameter_error("esterle_verify: matrix must be upper triangular");
    }

    EsterleReport rep;
    const Matrix eye = Matrix::Identity(d, d);
    Matrix tn = eye;
    for (int i = 0; i < n; ++i) tn = tn * t_op.mat;
    const Matrix diff = tn * t_op.mat - tn;

    rep.diff_norm = op_norm(diff, t_op.norm_kind);
    rep.threshold = std::pow(static_cast<double>(n), n) / std::pow(n + 1.0, n + 1);
    rep.hypothesis_holds = rep.diff_norm <= rep.threshold;
    rep.t_minus_i_norm = op_norm(Matrix(t_op.mat - eye), t_op.norm_kind);
    rep.conclusion_bound = 1.0 / (n + 1);
    rep.conclusion_holds = rep.t_minus_i_norm <= rep.conclusion_bound;

    // W_n(n(T^{n+1}-T^n)) as a finite sum: the argument is nilpotent.
    const int order = std::max(1, d - 1);
    const PowerSeries<Rational> wn =
        lagrange_invert(discrete_esterle_poly<Rational>(n, order), order);
    PowerSeries<double> wnd(order);
    for (int k = 0; k <= order; ++k) wnd[k] = to_double(wn[k]);
    DenseOperator arg{static_cast<double>(n) * diff, t_op.norm_kind, true};
    const Matrix recovered = apply_entire_series(wnd, arg).op.mat;
    rep.inversion_residual =
        op_norm(Matrix(recovered - static_cast<double>(n) * (t_op.mat - eye)), t_op.norm_kind);
    return rep;
}

struct PowerDiagnostics {
    ExperimentSeries power_norms;  // (n, ||T^n||)
    ExperimentSeries scaled_diffs; // (n, n ||T^{n+1} - T^n||)
    bool overflow_truncated = false;
};

inline PowerDiagnostics power_diagnostics(const DenseOperator& t_op, int n_max) {
    if (n_max < 1) throw parameter_error("power_diagnostics: n_max must be >= 1");
    PowerDiagnostics out;
    Matrix p = t_op.mat;
    for (int n = 1; n <= n_max; ++n) {
        const Matrix next = p * t_op.mat;
        const double np = op_norm(p, t_op.norm_kind);
        const double nd = op_norm(Matrix(next - p), t_op.norm_kind);
        if (!std::isfinite(np) || !std::isfinite(nd) || np > 1e300) {
            out.overflow_truncated = true;
            break;
        }
        out.power_norms.push(n, np);
        out.scaled_diffs.push(n, n * nd);
        p = next;
    }
    return out;
}

struct RittEstimate {
    double value = 0;             // grid lower bound for the Ritt constant
    int excluded_points = 0;      // singular resolvent solves skipped
    bool spectral_radius_warning = false;
};

/// max over a log-radial grid outside the unit circle of
/// |lambda - 1| ||(T - lambda I)^{-1}||.  A lower bound for the Ritt constant;
/// the grid concentrates on |lambda| -> 1 where the condition bites.
inline RittEstimate ritt_constant(const DenseOperator& t_op, int radii = 64, int angles = 256) {
    RittEstimate out;
    const int d = t_op.dim();

    // crude spectral radius probe via ||T^32||^{1/32}
    Matrix p = t_op.mat;
    for (int i = 0; i < 5; ++i) p = p * p;
    const double sr = std::pow(op_norm(p, t_op.norm_kind), 1.0 / 32.0);
    if (sr > 1.0 + 1e-6) out.spectral_radius_warning = true;

    const Matrix eye = Matrix::Identity(d, d);
    for (int i = 0; i < radii; ++i) {
        // |lambda| - 1 log-spaced in [1e-6, 1]
        const double r = 1.0 + 1e-6 * std::pow(1e6, static_cast<double>(i) / (radii - 1));
        for (int j = 0; j < angles; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / angles;
            const std::complex<double> lam = std::polar(r, theta);
            Eigen::PartialPivLU<Matrix> lu(t_op.mat - lam * eye);
            const Matrix inv = lu.inverse();
            if (!inv.allFinite()) {
                ++out.excluded_points;
                continue;
            }
            out.value = std::max(out.value, std::abs(lam - 1.0) * op_norm(inv, t_op.norm_kind));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded instance generation for the property suites.
// ---------------------------------------------------------------------------

/// Strictly upper triangular matrix with entries uniform on [-1, 1].
inline Matrix random_strict_upper(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix n = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) n(i, j) = std::complex<double>(u(rng), u(rng));
    return n;
}

/// T = I + c N with c chosen by bisection so that ||T^{n+1} - T^n|| lands at
/// `fraction` times the sharp threshold -- right at the hypothesis boundary.
inline DenseOperator scaled_esterle_instance(const Matrix& strict_upper, int n,
                                             double fraction = 0.9,
                                             NormKind kind = NormKind::induced_two) {
    const int d = static_cast<int>(strict_upper.rows());
    const Matrix eye = Matrix::Identity(d, d);
    const double target =
        fraction * std::pow(static_cast<double>(n), n) / std::pow(n + 1.0, n + 1);
    auto diff_norm = [&](double c) {
        const Matrix t = eye + c * strict_upper;
        Matrix tn = eye;
        for (int i = 0; i < n; ++i) tn = tn * t;
        return op_norm(Matrix(tn * t - tn), kind);
    };
    double lo = 0.0, hi = 1.0;
    while (diff_norm(hi) < target && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (diff_norm(mid) < target ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    const double c = 0.5 * (lo + hi);
    return {eye + c * strict_upper, kind, false};
}

} // namespace pbops

#endif
