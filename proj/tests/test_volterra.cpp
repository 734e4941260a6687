#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pbops/volterra.hpp"

using namespace pbops;

namespace {

// Direct Gauss-Legendre quadrature of the alpha-average of (1+i xi)^{-alpha}
// over (0, 1/2), the reference for the closed-form averaged symbol.
std::complex<double> averaged_symbol_by_quadrature(double xi) {
    std::complex<double> acc(0.0);
    const std::complex<double> L = std::log(std::complex<double>(1.0, xi));
    for (int q = 0; q < 16; ++q) {
        const double x = detail::gl32_x[q], w = detail::gl32_w[q];
        const double a1 = 0.25 * (1.0 + x), a2 = 0.25 * (1.0 - x);
        acc += w * (std::exp(-a1 * L) + std::exp(-a2 * L));
    }
    return 0.25 * acc;
}

} // namespace

TEST_CASE("symbol evaluation") {
    SECTION("value 1 at the origin for every fractional order") {
        for (double a : {0.1, 0.5, 0.9, 1.0})
            REQUIRE(std::abs(symbol_eval(SymbolKind::m_alpha_kind(a), 0.0) - 1.0) < 1e-12);
    }
    SECTION("order 1 at xi = 1 gives (1 - i)/2") {
        const auto v = symbol_eval(SymbolKind::m_alpha_kind(1.0), 1.0);
        REQUIRE(std::abs(v - std::complex<double>(0.5, -0.5)) < 1e-15);
    }
    SECTION("averaged symbol is 1/2 at the origin") {
        REQUIRE(std::abs(symbol_eval(SymbolKind::h_composite_kind(), 0.0) - 0.5) < 1e-12);
    }
    SECTION("closed form matches direct quadrature across a log grid") {
        for (double xi = 1e-6; xi < 1e6; xi *= 3.7) {
            const auto closed = symbol_eval(SymbolKind::h_composite_kind(), xi);
            REQUIRE(std::abs(closed - averaged_symbol_by_quadrature(xi)) < 1e-10);
            REQUIRE(closed.real() > 0.0);
        }
    }
    SECTION("series branch is continuous with the direct branch") {
        // |log w| crosses 1e-4 near xi = 1e-4; both branches must agree with
        // the quadrature reference at points straddling the switch
        for (double xi : {0.99e-4, 1.01e-4}) {
            const auto v = symbol_eval(SymbolKind::h_composite_kind(), xi);
            REQUIRE(std::abs(v - averaged_symbol_by_quadrature(xi)) < 1e-12);
        }
    }
    SECTION("alpha validation") {
        REQUIRE_THROWS_AS(SymbolKind::m_alpha_kind(0.0), parameter_error);
        REQUIRE_THROWS_AS(SymbolKind::m_alpha_kind(1.5), parameter_error);
    }
}

TEST_CASE("weighted symbol suprema") {
    SECTION("real-axis control gives 1/e for every t") {
        for (double t : {0.1, 1.0, 7.0, 100.0}) {
            const auto s = symbol_sup(SymbolKind::real_axis_kind(), t);
            REQUIRE(s.sup_value == Catch::Approx(std::exp(-1.0)).margin(1e-10));
        }
    }
    SECTION("half-order symbol at t = 10^4 approaches sqrt(2)/e") {
        const auto s = symbol_sup(SymbolKind::m_alpha_kind(0.5), 1e4);
        REQUIRE(s.sup_value == Catch::Approx(0.52026009).margin(1e-5));
        REQUIRE(s.sup_value ==
                Catch::Approx(std::sqrt(2.0) / std::numbers::e).margin(0.01));
        REQUIRE_FALSE(s.boundary_flag);
    }
    SECTION("averaged symbol at t = 30 approaches 1/e") {
        const auto s = symbol_sup(SymbolKind::h_composite_kind(), 30.0);
        REQUIRE(s.sup_value == Catch::Approx(0.368388).margin(1e-4));
        REQUIRE(s.sup_value == Catch::Approx(std::exp(-1.0)).margin(0.01));
    }
    SECTION("order 0.9 approaches its larger limit constant") {
        const auto s = symbol_sup(SymbolKind::m_alpha_kind(0.9), 1e4);
        const double limit = 1.0 / (std::numbers::e * std::cos(0.45 * std::numbers::pi));
        REQUIRE(s.sup_value == Catch::Approx(limit).margin(0.01));
    }
    SECTION("t must be positive") {
        REQUIRE_THROWS_AS(symbol_sup(SymbolKind::real_axis_kind(), 0.0), parameter_error);
    }
}

TEST_CASE("symbol limit studies") {
    SECTION("half-order supremum is monotone in t toward its limit") {
        const auto st =
            symbol_limit_study(SymbolKind::m_alpha_kind(0.5), {10.0, 100.0, 1000.0, 10000.0});
        for (std::size_t i = 1; i < st.sup_values.points.size(); ++i)
            REQUIRE(st.sup_values.points[i].second >= st.sup_values.points[i - 1].second);
        REQUIRE(st.sup_values.points.back().second ==
                Catch::Approx(std::sqrt(2.0) / std::numbers::e).margin(0.01));
    }
    SECTION("averaged-symbol argument at the maximizer decreases toward 0") {
        const auto st =
            symbol_limit_study(SymbolKind::h_composite_kind(), {5.0, 10.0, 20.0, 30.0});
        for (std::size_t i = 1; i < st.args.points.size(); ++i)
            REQUIRE(std::abs(st.args.points[i].second) <
                    std::abs(st.args.points[i - 1].second));
    }
    SECTION("t_list must increase") {
        REQUIRE_THROWS_AS(symbol_limit_study(SymbolKind::real_axis_kind(), {2.0, 1.0}),
                          parameter_error);
    }
}

TEST_CASE("kernel discretizations") {
    SECTION("validation") {
        REQUIRE_THROWS_AS(build_kernel(KernelKind::j_alpha_kind(0.5), 4), parameter_error);
        REQUIRE_THROWS_AS(KernelKind::j_alpha_kind(1.0), parameter_error);
        REQUIRE_THROWS_AS(KernelKind::l_alpha_kind(0.0), parameter_error);
    }
    SECTION("strict lower-triangular (causal) structure") {
        for (const auto& kind : {KernelKind::j_alpha_kind(0.3), KernelKind::l_alpha_kind(0.7),
                                 KernelKind::a_composite_kind()}) {
            const auto K = build_kernel(kind, 16);
            for (int i = 0; i < 16; ++i)
                for (int j = i + 1; j < 16; ++j) REQUIRE(K.op.mat(i, j) == 0.0);
        }
    }
    SECTION("order-1 kernel is the classical Volterra matrix") {
        // alpha -> 1 handled through the cell weights: weight = mesh width
        const auto K = build_kernel(KernelKind::j_alpha_kind(0.999999), 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j <= i; ++j)
                REQUIRE(std::abs(K.op.mat(i, j).real() - 0.125) < 1e-5);
    }
    SECTION("fractional kernel maps constants to the power function") {
        const int g = 128;
        for (double alpha : {0.3, 0.5, 0.8}) {
            const auto K = build_kernel(KernelKind::j_alpha_kind(alpha), g);
            const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(g);
            const Eigen::VectorXcd img = K.op.mat * ones;
            for (int i = 0; i < g; ++i) {
                const double x = (i + 1) / static_cast<double>(g);
                const double expect = std::pow(x, alpha) / std::tgamma(alpha + 1.0);
                REQUIRE(std::abs(img(i).real() - expect) < 10.0 / g);
            }
        }
    }
    SECTION("semigroup consistency on constants") {
        const int g = 128;
        const auto Ka = build_kernel(KernelKind::j_alpha_kind(0.3), g);
        const auto Kb = build_kernel(KernelKind::j_alpha_kind(0.6), g);
        const auto Kc = build_kernel(KernelKind::j_alpha_kind(0.9), g);
        const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(g);
        const Eigen::VectorXcd lhs = Ka.op.mat * (Kb.op.mat * ones);
        const Eigen::VectorXcd rhs = Kc.op.mat * ones;
        REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 10.0 / g);
    }
    SECTION("damped kernel powers obey the factorial bound") {
        const int g = 256;
        const auto K = build_kernel(KernelKind::l_alpha_kind(0.5), g, NormKind::induced_inf);
        Matrix p = Matrix::Identity(g, g);
        for (int n = 1; n <= 8; ++n) {
            p = p * K.op.mat;
            const double bound = 1.0 / std::tgamma(0.5 * n + 1.0);
            REQUIRE(op_norm(p, NormKind::induced_inf) <= bound * 1.01);
        }
    }
    SECTION("composite kernel is nonpositive") {
        const auto K = build_kernel(KernelKind::a_composite_kind(), 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j <= i; ++j) {
                REQUIRE(K.op.mat(i, j).real() <= 0.0);
                REQUIRE(K.op.mat(i, j).imag() == 0.0);
            }
    }
}

TEST_CASE("semigroup norm curves") {
    SECTION("scalar generator -a attains 1/e at t = 1/a") {
        Matrix m(1, 1);
        m(0, 0) = -1.0;
        const KernelOperator K{1, 1.0, KernelKind::a_composite_kind(),
                               DenseOperator{m, NormKind::induced_two, false}};
        const auto curve = semigroup_norm_curve(K, {0.5, 1.0, 2.0});
        REQUIRE(curve.points[1].second == Catch::Approx(std::exp(-1.0)).margin(1e-12));
        REQUIRE(curve.running_max() <= std::exp(-1.0) + 1e-12);
    }
    SECTION("damped fractional kernel curve is dominated by its symbol curve") {
        const auto K = build_kernel(KernelKind::l_alpha_kind(0.5), 128, NormKind::induced_two);
        // negate: the semigroup of interest is generated by -L
        const KernelOperator negK{K.grid_size, K.mesh_width, K.kind,
                                  DenseOperator{-K.op.mat, NormKind::induced_two, false}};
        for (double t : {5.0, 20.0}) {
            const auto curve = semigroup_norm_curve(negK, {t});
            const auto sym = symbol_sup(SymbolKind::m_alpha_kind(0.5), t);
            REQUIRE(curve.points[0].second <= sym.sup_value + 0.05);
        }
    }
    SECTION("t must be positive") {
        Matrix m(1, 1);
        m(0, 0) = -1.0;
        const KernelOperator K{1, 1.0, KernelKind::a_composite_kind(),
                               DenseOperator{m, NormKind::induced_two, false}};
        REQUIRE_THROWS_AS(semigroup_norm_curve(K, {-1.0}), parameter_error);
    }
}
