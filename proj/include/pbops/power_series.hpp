#ifndef PBOPS_POWER_SERIES_HPP
#define PBOPS_POWER_SERIES_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "pbops/errors.hpp"
#include "pbops/rational.hpp"

namespace pbops {

/// Truncated formal power series sum_{k=0}^{N} c_k z^k.  The coefficient type
/// is either Rational (exact mode) or double (floating mode).  Values are
/// immutable in spirit: every operation returns a fresh series.
template <class T>
class PowerSeries {
public:
    explicit PowerSeries(int order) : c_(static_cast<std::size_t>(order) + 1, T(0)) {
        if (order < 0) throw parameter_error("power series order must be >= 0");
    }

    explicit PowerSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw parameter_error("power series needs at least one coefficient");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    const std::vector<T>& coeffs() const { return c_; }

    // z itself.
    static PowerSeries identity(int order) {
        PowerSeries s(order);
        if (order >= 1) s[1] = T(1);
        return s;
    }

    PowerSeries truncated(int new_order) const {
        PowerSeries s(new_order);
        const int n = std::min(new_order, order());
        for (int k = 0; k <= n; ++k) s[k] = c_[static_cast<std::size_t>(k)];
        return s;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        const int n = std::min(a.order(), b.order());
        PowerSeries s(n);
        for (int k = 0; k <= n; ++k) s[k] = a[k] + b[k];
        return s;
    }

    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        const int n = std::min(a.order(), b.order());
        PowerSeries s(n);
        for (int k = 0; k <= n; ++k) s[k] = a[k] - b[k];
        return s;
    }

    // Product truncated at min(orders).
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        const int n = std::min(a.order(), b.order());
        PowerSeries s(n);
        for (int i = 0; i <= n; ++i) {
            if (a[i] == T(0)) continue;
            for (int j = 0; i + j <= n; ++j) s[i + j] += a[i] * b[j];
        }
        return s;
    }

    friend PowerSeries operator*(const T& scalar, const PowerSeries& a) {
        PowerSeries s(a.order());
        for (int k = 0; k <= a.order(); ++k) s[k] = scalar * a[k];
        return s;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.c_ == b.c_;
    }

private:
    std::vector<T> c_;
};

// 1 / f truncated at degree N; requires f(0) != 0.
template <class T>
PowerSeries<T> reciprocal(const PowerSeries<T>& f, int N) {
    if (f[0] == T(0)) throw parameter_error("reciprocal: constant term is zero");
    PowerSeries<T> r(N);
    r[0] = T(1) / f[0];
    for (int k = 1; k <= N; ++k) {
        T acc(0);
        for (int j = 1; j <= std::min(k, f.order()); ++j) acc += f[j] * r[k - j];
        r[k] = -acc / f[0];
    }
    return r;
}

// g(f(z)) truncated at degree N; requires f(0) = 0.
template <class T>
PowerSeries<T> compose(const PowerSeries<T>& g, const PowerSeries<T>& f, int N) {
    if (f[0] != T(0)) throw parameter_error("compose: inner series has nonzero constant term");
    const PowerSeries<T> ft = f.truncated(N);
    PowerSeries<T> acc(N);
    for (int k = g.order(); k >= 0; --k) {
        acc = acc * ft;
        acc[0] += g[k];
    }
    return acc;
}

/// Compositional inverse of f to degree N via Lagrange's formula: the m-th
/// coefficient is [z^{m-1}] (z/f(z))^m / m, extracted from a running product.
/// Requires f(0) = 0 and f'(0) != 0.
template <class T>
PowerSeries<T> lagrange_invert(const PowerSeries<T>& f, int N) {
    if (N < 1) throw parameter_error("lagrange_invert: order must be >= 1");
    if (f[0] != T(0)) throw parameter_error("lagrange_invert: f(0) != 0");
    if (f.order() < 1 || f[1] == T(0))
        throw parameter_error("lagrange_invert: f'(0) = 0, series not invertible");

    // u = z/f(z) = 1 / (f(z)/z), a unit series.
    PowerSeries<T> shifted(N);
    for (int k = 0; k <= N; ++k)
        shifted[k] = (k + 1 <= f.order()) ? f[k + 1] : T(0);
    const PowerSeries<T> u = reciprocal(shifted, N);

    PowerSeries<T> phi(N);
    PowerSeries<T> power = u; // u^m as m runs
    phi[1] = power[0];
    for (int m = 2; m <= N; ++m) {
        power = power * u;
        phi[m] = power[m - 1] / T(m);
    }
    return phi;
}

} // namespace pbops

#endif
