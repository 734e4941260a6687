#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pbops/l1multiplier.hpp"

using namespace pbops;

TEST_CASE("kernel evaluation") {
    SECTION("removable singularities at the origin") {
        REQUIRE(kernel_eval(MultiplierKernel::g(1), 0.0) ==
                Catch::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
        REQUIRE(kernel_eval(MultiplierKernel::d(1), 0.0) ==
                Catch::Approx(-1.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
        for (int n : {2, 5, 40}) {
            REQUIRE(kernel_eval(MultiplierKernel::g(n), 0.0) ==
                    Catch::Approx((n + 1.0) / (std::numbers::pi * n)).epsilon(1e-12));
            REQUIRE(kernel_eval(MultiplierKernel::d(n), 0.0) ==
                    Catch::Approx(-1.0 / (std::numbers::pi * n * (n + 1.0))).epsilon(1e-12));
        }
    }
    SECTION("series branch is continuous with the closed form") {
        for (int n : {1, 7, 100}) {
            for (const auto& k : {MultiplierKernel::g(n), MultiplierKernel::d(n)}) {
                // the kernel genuinely varies by ~|k'(0)|*2e-6 across the
                // switch point; only a jump beyond that indicates a bad branch
                const double lo = kernel_eval(k, 0.99e-4);
                const double hi = kernel_eval(k, 1.01e-4);
                REQUIRE(std::abs(lo - hi) < 2e-9);
            }
        }
    }
    SECTION("evenness") {
        for (double x : {0.3, 2.0, 17.5})
            for (int n : {1, 9}) {
                REQUIRE(kernel_eval(MultiplierKernel::g(n), x) ==
                        kernel_eval(MultiplierKernel::g(n), -x));
                REQUIRE(kernel_eval(MultiplierKernel::d(n), x) ==
                        kernel_eval(MultiplierKernel::d(n), -x));
            }
    }
    SECTION("difference identity holds pointwise") {
        for (int n = 1; n <= 20; ++n) {
            double worst = 0.0;
            for (int i = 0; i < 10000; ++i) {
                const double x = -40.0 + 80.0 * i / 9999.0;
                worst = std::max(worst,
                                 std::abs(kernel_eval(MultiplierKernel::g(n + 1), x) -
                                          kernel_eval(MultiplierKernel::g(n), x) -
                                          kernel_eval(MultiplierKernel::d(n), x)));
            }
            REQUIRE(worst <= 1e-12);
        }
    }
    SECTION("validation") { REQUIRE_THROWS_AS(MultiplierKernel::g(0), parameter_error); }
}

TEST_CASE("integration") {
    SECTION("signed integral of the power kernel is 1") {
        for (int n : {1, 4, 64})
            REQUIRE(signed_integral(MultiplierKernel::g(n)) ==
                    Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("absolute norm dominates the signed integral and frozen values") {
        const double n4 = l1_norm(MultiplierKernel::g(4));
        REQUIRE(n4 >= 1.0);
        REQUIRE(n4 == Catch::Approx(1.6405).margin(0.02));
        REQUIRE(l1_norm(MultiplierKernel::g(16)) == Catch::Approx(2.1369).margin(0.02));
    }
    SECTION("difference norms: frozen scaled values") {
        REQUIRE(64.0 * l1_norm(MultiplierKernel::d(64)) ==
                Catch::Approx(0.6291).margin(0.01));
    }
    SECTION("exhausted budget raises with a partial value") {
        try {
            l1_norm(MultiplierKernel::g(4), 1e-3, 100);
            FAIL("expected budget_error");
        } catch (const budget_error& e) {
            REQUIRE(e.partial_value >= 0.0);
        }
    }
    SECTION("validation") {
        REQUIRE_THROWS_AS(l1_norm(MultiplierKernel::g(1), 0.0), parameter_error);
    }
}

TEST_CASE("growth and difference studies") {
    SECTION("two points interpolate exactly") {
        const auto g = growth_study({2, 4});
        REQUIRE(g.norms.points.size() == 2);
        REQUIRE(g.fit_max_residual < 1e-9);
        REQUIRE(g.slope_estimates.size() == 1);
    }
    SECTION("constant control sequence has slope near zero") {
        // same kernel at every index: successive slope estimates vanish
        const double v = l1_norm(MultiplierKernel::g(4));
        ExperimentSeries fake;
        for (int n : {4, 16, 64}) fake.push(n, v);
        const double slope = (fake.points[2].second - fake.points[0].second) /
                             std::log(64.0 / 4.0);
        REQUIRE(std::abs(slope) < 1e-12);
    }
    SECTION("difference study reports the scaled norms with running max") {
        const auto d = diff_study({64, 128});
        REQUIRE(d.points.size() == 2);
        REQUIRE(d.running_max() >= d.points[0].second);
        REQUIRE(d.points[0].second == Catch::Approx(0.6291).margin(0.01));
    }
    SECTION("n_list must increase") {
        REQUIRE_THROWS_AS(growth_study({4, 4}), parameter_error);
        REQUIRE_THROWS_AS(growth_study({4}), parameter_error);
        REQUIRE_THROWS_AS(diff_study({8, 2}), parameter_error);
    }
}
