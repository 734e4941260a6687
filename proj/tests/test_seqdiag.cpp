#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pbops/seqdiag.hpp"

using namespace pbops;

TEST_CASE("difference bound sum") {
    SECTION("frozen values at factorial indices") {
        REQUIRE(diff_bound_sum(720) == Catch::Approx(0.5066).margin(5e-4));
        REQUIRE(diff_bound_sum(5040) == Catch::Approx(0.4846).margin(5e-4));
        REQUIRE(diff_bound_sum(40320) == Catch::Approx(0.46999).margin(5e-4));
    }
    SECTION("at n = m! the middle term is exactly 1/e, so the sum exceeds it") {
        int fact = 1;
        for (int m = 1; m <= 8; ++m) {
            fact *= m;
            TermBreakdown terms;
            const double total = diff_bound_sum(fact, &terms);
            REQUIRE(total >= std::exp(-1.0));
            bool middle = false;
            for (const auto& [k, v] : terms.terms)
                if (k == m) {
                    REQUIRE(v == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
                    middle = true;
                }
            REQUIRE(middle);
        }
    }
    SECTION("distance to 1/e decreases along factorials") {
        int fact = 24; // 4!
        double prev = std::abs(diff_bound_sum(fact) - std::exp(-1.0));
        for (int m = 5; m <= 8; ++m) {
            fact *= m;
            const double cur = std::abs(diff_bound_sum(fact) - std::exp(-1.0));
            REQUIRE(cur < prev);
            prev = cur;
        }
    }
    SECTION("small index breakdown") {
        TermBreakdown terms;
        const double total = diff_bound_sum(1, &terms);
        REQUIRE(terms.terms.size() >= 3);
        REQUIRE(terms.terms[0].second == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
        REQUIRE(terms.terms[1].second == Catch::Approx(0.5 * std::exp(-0.5)).epsilon(1e-12));
        REQUIRE(terms.terms[2].second ==
                Catch::Approx(std::exp(-1.0 / 6.0) / 6.0).epsilon(1e-12));
        REQUIRE(total > 0.8);
        REQUIRE(total < 0.95);
        for (const auto& [k, v] : terms.terms) REQUIRE(v > 0.0);
    }
    SECTION("validation") { REQUIRE_THROWS_AS(diff_bound_sum(0), parameter_error); }
}

TEST_CASE("projection bound sum") {
    SECTION("frozen values") {
        REQUIRE(projection_bound_sum(1) == Catch::Approx(1.0862).margin(1e-4));
        REQUIRE(projection_bound_sum(2) == Catch::Approx(0.9398).margin(1e-4));
        REQUIRE(projection_bound_sum(12) == Catch::Approx(0.4507).margin(1e-4));
    }
    SECTION("closed forms at small n") {
        const double e = std::numbers::e;
        REQUIRE(projection_bound_sum(1) ==
                Catch::Approx(std::exp(-1.0) + (e - 2.0)).epsilon(1e-12));
        REQUIRE(projection_bound_sum(2) ==
                Catch::Approx(std::exp(-2.0) + std::exp(-1.0) + 2.0 * (e - 2.5))
                    .epsilon(1e-12));
    }
    SECTION("bounded by 2 over the whole supported range") {
        for (int n = 1; n <= 12; ++n) {
            const double v = projection_bound_sum(n);
            REQUIRE(v > 0.0);
            REQUIRE(v <= 2.0);
        }
    }
    SECTION("bit-identical on repeat evaluation") {
        REQUIRE(projection_bound_sum(7) == projection_bound_sum(7));
    }
    SECTION("range validation") {
        REQUIRE_THROWS_AS(projection_bound_sum(0), parameter_error);
        REQUIRE_THROWS_AS(projection_bound_sum(13), parameter_error);
    }
}

TEST_CASE("limsup scans") {
    SECTION("projection scan over the supported range") {
        const auto s = limsup_scan(SeqBound::projection, 1, 12);
        REQUIRE(s.points.size() == 12);
        REQUIRE(s.running_max() <= 2.0);
        REQUIRE(s.running_max() == Catch::Approx(projection_bound_sum(1)).epsilon(1e-15));
        REQUIRE(s.tail_max() <= s.running_max());
    }
    SECTION("difference scan samples log-spaced indices") {
        const auto s = limsup_scan(SeqBound::diff, 100, 10000, 30);
        REQUIRE(s.points.size() >= 25);
        for (std::size_t i = 1; i < s.points.size(); ++i)
            REQUIRE(s.points[i].first > s.points[i - 1].first);
        REQUIRE(s.tail_max() <= s.running_max());
    }
    SECTION("validation") {
        REQUIRE_THROWS_AS(limsup_scan(SeqBound::diff, 0, 10), parameter_error);
        REQUIRE_THROWS_AS(limsup_scan(SeqBound::diff, 10, 5), parameter_error);
    }
}

TEST_CASE("experiment series estimators") {
    ExperimentSeries s;
    SECTION("small series do not crash the tail estimator") {
        s.push(1, 5.0);
        REQUIRE(s.tail_max() == 5.0);
        REQUIRE(s.running_max() == 5.0);
        REQUIRE(s.argmax_index() == 1.0);
        s.push(2, 3.0);
        s.push(3, 4.0);
        REQUIRE(s.running_max() == 5.0);
        REQUIRE(s.tail_max() <= s.running_max());
        REQUIRE(s.argmax_index() == 1.0);
    }
    SECTION("tail max covers the final quarter") {
        for (int i = 1; i <= 8; ++i) s.push(i, static_cast<double>(i));
        REQUIRE(s.tail_max() == 8.0);
        REQUIRE(s.running_max() == 8.0);
    }
}
