#ifndef PBOPS_FUNCTION_SPEC_HPP
#define PBOPS_FUNCTION_SPEC_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pbops/power_series.hpp"

namespace pbops {

enum class Family {
    zexp,    // z e^z
    zpow,    // z (1-z)^n
    powdiff, // (1-z)^n - (1-z)^m,  m > n >= 1
    expdiff, // e^{-z} - e^{-sz},   s > 1
    expsin,  // e^{-sz} sin z,      s >= 0
    onepow,  // 1 - (1-z)^n
    zexpm,   // z e^{-z^m}
    custom,  // explicit polynomial coefficients
};

/// Symbolic descriptor of one of the analytic function families the library
/// works with.  Construct through the named factories; they validate the
/// parameter ranges.
struct FunctionSpec {
    Family family = Family::custom;
    int n = 0;
    int m = 0;
    double s = 0.0;
    std::vector<Rational> custom_coeffs; // custom_coeffs[k] multiplies z^k

    static FunctionSpec zexp() { return {Family::zexp, 0, 0, 0.0, {}}; }

    static FunctionSpec zpow(int n) {
        if (n < 1) throw parameter_error("zpow: n must be >= 1");
        return {Family::zpow, n, 0, 0.0, {}};
    }

    static FunctionSpec powdiff(int n, int m) {
        if (n < 1 || m <= n) throw parameter_error("powdiff: need m > n >= 1");
        return {Family::powdiff, n, m, 0.0, {}};
    }

    static FunctionSpec expdiff(double s) {
        if (!(s > 1.0)) throw parameter_error("expdiff: need s > 1");
        return {Family::expdiff, 0, 0, s, {}};
    }

    static FunctionSpec expsin(double s) {
        if (!(s >= 0.0)) throw parameter_error("expsin: need s >= 0");
        return {Family::expsin, 0, 0, s, {}};
    }

    static FunctionSpec onepow(int n) {
        if (n < 1) throw parameter_error("onepow: n must be >= 1");
        return {Family::onepow, n, 0, 0.0, {}};
    }

    static FunctionSpec zexpm(int m) {
        if (m < 1) throw parameter_error("zexpm: m must be >= 1");
        return {Family::zexpm, 0, m, 0.0, {}};
    }

    static FunctionSpec custom(std::vector<Rational> coeffs) {
        if (coeffs.empty()) throw parameter_error("custom: empty coefficient list");
        FunctionSpec f;
        f.family = Family::custom;
        f.custom_coeffs = std::move(coeffs);
        return f;
    }

    std::string name() const {
        switch (family) {
            case Family::zexp:    return "z*exp(z)";
            case Family::zpow:    return "z*(1-z)^" + std::to_string(n);
            case Family::powdiff: return "(1-z)^" + std::to_string(n) + "-(1-z)^" + std::to_string(m);
            case Family::expdiff: return "exp(-z)-exp(-" + std::to_string(s) + "z)";
            case Family::expsin:  return "exp(-" + std::to_string(s) + "z)*sin(z)";
            case Family::onepow:  return "1-(1-z)^" + std::to_string(n);
            case Family::zexpm:   return "z*exp(-z^" + std::to_string(m) + ")";
            case Family::custom:  return "custom polynomial";
        }
        return "?";
    }

    std::complex<double> eval(std::complex<double> z) const {
        using std::exp;
        using std::sin;
        switch (family) {
            case Family::zexp:    return z * exp(z);
            case Family::zpow:    return z * cpow(1.0 - z, n);
            case Family::powdiff: return cpow(1.0 - z, n) - cpow(1.0 - z, m);
            case Family::expdiff: return exp(-z) - exp(-s * z);
            case Family::expsin:  return exp(-s * z) * sin(z);
            case Family::onepow:  return 1.0 - cpow(1.0 - z, n);
            case Family::zexpm:   return z * exp(-cpow(z, m));
            case Family::custom: {
                std::complex<double> acc(0.0);
                for (int k = static_cast<int>(custom_coeffs.size()) - 1; k >= 0; --k)
                    acc = acc * z + to_double(custom_coeffs[static_cast<std::size_t>(k)]);
                return acc;
            }
        }
        return {};
    }

    double eval(double x) const { return eval(std::complex<double>(x)).real(); }

    // Closed-form first derivative on the real axis.
    double deriv(double x) const {
        switch (family) {
            case Family::zexp:    return (1.0 + x) * std::exp(x);
            case Family::zpow:    return rpow(1.0 - x, n - 1) * (1.0 - (n + 1) * x);
            case Family::powdiff: return -n * rpow(1.0 - x, n - 1) + m * rpow(1.0 - x, m - 1);
            case Family::expdiff: return -std::exp(-x) + s * std::exp(-s * x);
            case Family::expsin:  return std::exp(-s * x) * (std::cos(x) - s * std::sin(x));
            case Family::onepow:  return n * rpow(1.0 - x, n - 1);
            case Family::zexpm:   return std::exp(-rpow(x, m)) * (1.0 - m * rpow(x, m));
            case Family::custom: {
                double acc = 0.0;
                for (int k = static_cast<int>(custom_coeffs.size()) - 1; k >= 1; --k)
                    acc = acc * x + k * to_double(custom_coeffs[static_cast<std::size_t>(k)]);
                return acc;
            }
        }
        return 0.0;
    }

    // Closed-form second derivative on the real axis.
    double deriv2(double x) const {
        switch (family) {
            case Family::zexp:    return (2.0 + x) * std::exp(x);
            case Family::zpow:
                return -(n + 1) * rpow(1.0 - x, n - 1)
                       - (n - 1) * rpow(1.0 - x, n - 2) * (1.0 - (n + 1) * x);
            case Family::powdiff:
                return n * (n - 1) * rpow(1.0 - x, n - 2) - m * (m - 1) * rpow(1.0 - x, m - 2);
            case Family::expdiff: return std::exp(-x) - s * s * std::exp(-s * x);
            case Family::expsin:  return std::exp(-s * x) * ((s * s - 1.0) * std::sin(x) - 2.0 * s * std::cos(x));
            case Family::zexpm:
                return -m * rpow(x, m - 1) * std::exp(-rpow(x, m)) * (m + 1.0 - m * rpow(x, m));
            case Family::onepow:  return -n * (n - 1) * rpow(1.0 - x, n - 2);
            case Family::custom: {
                double acc = 0.0;
                for (int k = static_cast<int>(custom_coeffs.size()) - 1; k >= 2; --k)
                    acc = acc * x + k * (k - 1) * to_double(custom_coeffs[static_cast<std::size_t>(k)]);
                return acc;
            }
        }
        return 0.0;
    }

    /// Degree-N Taylor polynomial about 0.  Exact for T = Rational; the real
    /// parameter s enters with its exact binary value.
    template <class T>
    PowerSeries<T> taylor(int N) const {
        if (N < 1) throw parameter_error("taylor: order must be >= 1");
        PowerSeries<T> out(N);
        switch (family) {
            case Family::zexp:
                for (int k = 1; k <= N; ++k) out[k] = T(1) / T(factorial(static_cast<unsigned>(k - 1)));
                break;
            case Family::zpow:
                // z * sum_j C(n,j) (-z)^j
                for (int j = 0; j <= std::min(n, N - 1); ++j) {
                    T c = T(binomial(n, static_cast<unsigned>(j)));
                    out[j + 1] = (j % 2 == 0) ? c : -c;
                }
                break;
            case Family::powdiff:
                for (int j = 1; j <= std::min(m, N); ++j) {
                    T a = (j <= n) ? T(binomial(n, static_cast<unsigned>(j))) : T(0);
                    T b = (j <= m) ? T(binomial(m, static_cast<unsigned>(j))) : T(0);
                    T c = a - b;
                    out[j] = (j % 2 == 0) ? c : -c;
                }
                break;
            case Family::expdiff: {
                const T sr = param_s<T>();
                T pow_s = sr;
                // coefficient k: ((-1)^k - (-s)^k)/k!
                for (int k = 1; k <= N; ++k) {
                    T c = (T((k % 2 == 0) ? 1 : -1) - ((k % 2 == 0) ? pow_s : -pow_s))
                          / T(factorial(static_cast<unsigned>(k)));
                    out[k] = c;
                    pow_s *= sr;
                }
                break;
            }
            case Family::expsin: {
                const T sr = param_s<T>();
                // product of exp(-sz) and sin z
                std::vector<T> e(static_cast<std::size_t>(N) + 1), si(static_cast<std::size_t>(N) + 1, T(0));
                T pw(1);
                for (int k = 0; k <= N; ++k) {
                    e[static_cast<std::size_t>(k)] =
                        ((k % 2 == 0) ? pw : -pw) / T(factorial(static_cast<unsigned>(k)));
                    pw *= sr;
                }
                for (int k = 1; k <= N; k += 2)
                    si[static_cast<std::size_t>(k)] =
                        T((k % 4 == 1) ? 1 : -1) / T(factorial(static_cast<unsigned>(k)));
                for (int i = 0; i <= N; ++i)
                    for (int j = 0; i + j <= N; ++j)
                        out[i + j] += e[static_cast<std::size_t>(i)] * si[static_cast<std::size_t>(j)];
                break;
            }
            case Family::onepow:
                for (int j = 1; j <= std::min(n, N); ++j) {
                    T c = T(binomial(n, static_cast<unsigned>(j)));
                    out[j] = (j % 2 == 0) ? -c : c;
                }
                break;
            case Family::zexpm:
                for (int j = 0; 1 + j * m <= N; ++j) {
                    T c = T(1) / T(factorial(static_cast<unsigned>(j)));
                    out[1 + j * m] = (j % 2 == 0) ? c : -c;
                }
                break;
            case Family::custom:
                for (int k = 0; k <= std::min<int>(N, static_cast<int>(custom_coeffs.size()) - 1); ++k) {
                    if constexpr (std::is_same_v<T, Rational>)
                        out[k] = custom_coeffs[static_cast<std::size_t>(k)];
                    else
                        out[k] = to_double(custom_coeffs[static_cast<std::size_t>(k)]);
                }
                break;
        }
        return out;
    }

private:
    template <class T>
    T param_s() const {
        if constexpr (std::is_same_v<T, Rational>)
            return Rational(s);
        else
            return s;
    }

    static std::complex<double> cpow(std::complex<double> z, int p) {
        std::complex<double> r(1.0);
        for (int i = 0; i < p; ++i) r *= z;
        return r;
    }

    static double rpow(double x, int p) {
        if (p <= 0) return p == 0 ? 1.0 : 1.0 / rpow(x, -p);
        double r = 1.0;
        for (int i = 0; i < p; ++i) r *= x;
        return r;
    }
};

/// z (1 + z/n)^n, the polynomial whose compositional inverse carries the
/// discrete coefficients p_{nm}.
template <class T>
PowerSeries<T> discrete_esterle_poly(int n, int N) {
    if (n < 1) throw parameter_error("discrete_esterle_poly: n must be >= 1");
    PowerSeries<T> out(N);
    for (int j = 0; j <= std::min(n, N - 1); ++j) {
        if constexpr (std::is_same_v<T, Rational>)
            out[j + 1] = Rational(binomial(n, static_cast<unsigned>(j)), int_pow(n, static_cast<unsigned>(j)));
        else
            out[j + 1] = to_double(Rational(binomial(n, static_cast<unsigned>(j)),
                                            int_pow(n, static_cast<unsigned>(j))));
    }
    return out;
}

// Closed-form inverse coefficients, used as exact oracles for the generic
// inversion code: (-m)^{m-1}/m! and the discrete analogue.
inline Rational lambert_coefficient(int m) {
    if (m < 1) throw parameter_error("lambert_coefficient: m must be >= 1");
    Integer num = int_pow(Integer(-m), static_cast<unsigned>(m - 1));
    return Rational(num, factorial(static_cast<unsigned>(m)));
}

inline Rational discrete_coefficient(int n, int m) {
    if (n < 1 || m < 1) throw parameter_error("discrete_coefficient: need n,m >= 1");
    const Integer top = Integer(n) * m + m - 1;
    Integer num = binomial(top, static_cast<unsigned>(m));
    if (m % 2 == 0) num = -num;
    return Rational(num, int_pow(Integer(n), static_cast<unsigned>(m - 1)) * top);
}

} // namespace pbops

#endif
