#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "blindspot/analytic.hpp"

using namespace blindspot;
namespace an = blindspot::analytic;

TEST_CASE("conditional_blindspot frozen values") {
    CHECK(an::conditional_blindspot(0.5, 0.0) == 1.0);
    CHECK(an::conditional_blindspot(0.0, 100.0) == 1.0);
    // Poisson CDF oracle at mean 1: e^{-1}(1 + 1 + 0.5)
    CHECK(an::conditional_blindspot(0.01, 100.0) ==
          Catch::Approx(0.9196986029286058).epsilon(1e-12));
    // large mean stays finite and tiny
    CHECK(an::conditional_blindspot(1.0, 100.0) ==
          Catch::Approx(1.8976107553682285e-40).epsilon(1e-10));
    // huge mean underflows to 0 without overflow
    CHECK(an::conditional_blindspot(1.0, 1e6) == 0.0);
    CHECK_THROWS_AS(an::conditional_blindspot(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("conditional_blindspot monotonicity") {
    double prev = 1.0;
    for (double area : {1.0, 10.0, 50.0, 200.0, 1000.0}) {
        const double p = an::conditional_blindspot(0.05, area);
        CHECK(p <= prev);
        prev = p;
    }
    CHECK(an::conditional_blindspot(0.05, 50.0, 2) <= an::conditional_blindspot(0.05, 50.0, 3));
    CHECK(an::conditional_blindspot(0.05, 50.0, 3) <= an::conditional_blindspot(0.05, 50.0, 4));
    CHECK(an::conditional_blindspot(0.08, 50.0) <= an::conditional_blindspot(0.05, 50.0));
}

TEST_CASE("gamma cell-area pdf") {
    CHECK(an::gamma_cell_area_pdf(-1.0, 0.03) == 0.0);
    CHECK_THROWS_AS(an::gamma_cell_area_pdf(10.0, 0.0), std::invalid_argument);
    CHECK(an::gamma_cell_area_pdf(100.0, 0.03) ==
          Catch::Approx(0.006361001647636767).epsilon(1e-10));

    SECTION("normalization and mean by quadrature") {
        const double lambda0 = 0.03;
        const auto pdf = [lambda0](double a) { return an::gamma_cell_area_pdf(a, lambda0); };
        const double upper = 40.0 * 4.0 / lambda0;
        const double total = an::detail::adaptive_simpson(pdf, 0.0, upper, 1e-10, 1e-16);
        CHECK(total == Catch::Approx(1.0).margin(1e-6));
        const auto first = [&](double a) { return a * pdf(a); };
        const double mean = an::detail::adaptive_simpson(first, 0.0, upper, 1e-10, 1e-16);
        CHECK(mean == Catch::Approx(4.0 / lambda0).epsilon(0.005));
    }

    SECTION("scale law: f(A; l0) = (l0/l0') f(A l0/l0'; l0')") {
        for (double t : {0.5, 2.0, 10.0}) {
            const double l0 = 0.03, l0p = t * 0.03;
            for (double area : {10.0, 80.0, 300.0}) {
                const double lhs = an::gamma_cell_area_pdf(area, l0);
                const double rhs =
                    (l0 / l0p) * an::gamma_cell_area_pdf(area * l0 / l0p, l0p);
                CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gamma cell-area cdf against incomplete-gamma oracle") {
    // gammainc(c/a, b u^a) reference values
    CHECK(an::gamma_cell_area_cdf_scaled(0.2) ==
          Catch::Approx(0.014986229868261402).epsilon(1e-10));
    CHECK(an::gamma_cell_area_cdf_scaled(0.5) ==
          Catch::Approx(0.16350358081799632).epsilon(1e-10));
    CHECK(an::gamma_cell_area_cdf_scaled(1.0) ==
          Catch::Approx(0.5681363072965961).epsilon(1e-10));
    CHECK(an::gamma_cell_area_cdf_scaled(2.0) ==
          Catch::Approx(0.9504229494265014).epsilon(1e-10));
    CHECK(an::gamma_cell_area_cdf_scaled(3.0) ==
          Catch::Approx(0.996754295186748).epsilon(1e-10));
    CHECK(an::gamma_cell_area_cdf_scaled(0.0) == 0.0);

    SECTION("cdf matches the integrated pdf") {
        for (double u : {0.3, 0.9, 1.7}) {
            const double by_quad = an::detail::adaptive_simpson(
                an::detail::scaled_area_pdf, 0.0, u, 1e-10, 1e-16);
            CHECK(an::gamma_cell_area_cdf_scaled(u) == Catch::Approx(by_quad).epsilon(1e-8));
        }
    }
}

TEST_CASE("asymptotic_blindspot frozen grid") {
    // independent quadrature oracle values at lambda0 = 0.03
    const double expected[] = {0.8287364089213635, 0.5479220417828302, 0.3530869995115595,
                               0.23311139669919642, 0.15913710886791074, 0.11223111459188688,
                               0.08149611536819158, 0.06071104385360064, 0.04624573079328734,
                               0.03591799940319764};
    for (int i = 0; i < 10; ++i) {
        const double lambda = 0.01 * (i + 1);
        CHECK(an::asymptotic_blindspot(lambda, 0.03) ==
              Catch::Approx(expected[i]).epsilon(1e-7));
    }
    CHECK(an::asymptotic_blindspot(0.0, 0.03) == 1.0);
    CHECK(an::asymptotic_blindspot(0.05, 0.03, 1) ==
          Catch::Approx(0.02403490990062067).epsilon(1e-7));
    CHECK(an::asymptotic_blindspot(0.05, 0.03, 5) ==
          Catch::Approx(0.3593648950419362).epsilon(1e-7));
    CHECK_THROWS_AS(an::asymptotic_blindspot(0.05, 0.0), std::invalid_argument);
}

TEST_CASE("asymptotic_blindspot properties") {
    SECTION("scale invariance in (lambda, lambda0)") {
        for (double t : {0.5, 2.0, 10.0}) {
            for (double lambda : {0.01, 0.04, 0.09}) {
                CHECK(std::fabs(an::asymptotic_blindspot(lambda, 0.03) -
                                an::asymptotic_blindspot(t * lambda, t * 0.03)) < 1e-8);
            }
        }
    }
    SECTION("strictly decreasing in lambda, increasing in lambda0") {
        for (double lambda0 : {0.01, 0.04, 0.07, 0.1}) {
            double prev = 1.0;
            for (int i = 1; i <= 10; ++i) {
                const double b = an::asymptotic_blindspot(0.01 * i, lambda0);
                CHECK(b < prev);
                CHECK(b >= 0.0);
                CHECK(b <= 1.0);
                prev = b;
            }
        }
        for (double lambda : {0.02, 0.05, 0.08}) {
            double prev = 0.0;
            for (int i = 1; i <= 10; ++i) {
                const double b = an::asymptotic_blindspot(lambda, 0.01 * i);
                CHECK(b > prev);
                prev = b;
            }
        }
    }
}

TEST_CASE("visibility probability and delta criterion") {
    CHECK(an::visibility_probability(0.0, 0.03) == 1.0);
    CHECK(an::visibility_probability(10.0, 0.03) ==
          Catch::Approx(0.09478022484215486).epsilon(1e-12));
    CHECK(an::visibility_probability(20.0, 0.03) ==
          Catch::Approx(8.069951757030463e-05).epsilon(1e-12));
    CHECK(an::visibility_probability(20.0, 0.03) < 1e-4);  // delta admissibility

    CHECK(an::min_lambda0_for_delta(20.0, 1e-4) ==
          Catch::Approx(0.029317423955177106).epsilon(1e-12));
    CHECK(an::min_lambda0_for_delta(20.0, std::exp(-M_PI * 100.0)) ==
          Catch::Approx(1.0).epsilon(1e-12));
    for (double range : {5.0, 20.0, 100.0}) {
        for (double delta : {1e-2, 1e-4, 1e-8}) {
            const double l0 = an::min_lambda0_for_delta(range, delta);
            CHECK(an::visibility_probability(range, l0) == Catch::Approx(delta).epsilon(1e-12));
        }
    }
}

TEST_CASE("mean visible area and the independent baselines") {
    SECTION("no-obstacle limit") {
        const auto mv = an::mean_visible_area_lines(0.03, 1e-9, 20.0);
        CHECK(mv.anchor_mean == Catch::Approx(0.03 * M_PI * 400.0).epsilon(1e-6));
    }
    SECTION("frozen value at the reference operating point") {
        const auto mv = an::mean_visible_area_lines(0.03, 0.03, 20.0);
        CHECK(mv.anchor_mean == Catch::Approx(3.999677201929719).epsilon(1e-12));
        CHECK(mv.mean_area <= M_PI * 400.0);
    }
    SECTION("independent lines baseline = Poisson CDF at the mean") {
        CHECK(an::independent_blindspot_lines(0.0, 0.03, 20.0) == 1.0);
        CHECK(an::independent_blindspot_lines(0.03, 0.03, 20.0) ==
              Catch::Approx(0.23815060739368865).epsilon(1e-10));
    }
    SECTION("independent baseline underestimates the asymptotic value for lambda >= 0.02") {
        // At lambda = 0.01 the ordering flips: the conditional blind-spot
        // probability is convex over the relevant area range there, so
        // averaging over the area law (b_as) lies below evaluating at the
        // mean area (the independent baseline).
        CHECK(an::independent_blindspot_lines(0.01, 0.03, 20.0) >
              an::asymptotic_blindspot(0.01, 0.03));
        for (int i = 2; i <= 10; ++i) {
            const double lambda = 0.01 * i;
            const double ind = an::independent_blindspot_lines(lambda, 0.03, 20.0);
            const double bas = an::asymptotic_blindspot(lambda, 0.03);
            CHECK(ind < bas);
        }
    }
}

TEST_CASE("independent segments baseline") {
    const double disk = M_PI * 400.0;
    CHECK(an::independent_blindspot_segments(0.03, 0.0, 20.0) == 1.0);
    CHECK(an::independent_blindspot_segments(0.03, disk, 20.0) ==
          Catch::Approx(an::conditional_blindspot(0.03, disk)).epsilon(1e-12));
    CHECK_THROWS_AS(an::independent_blindspot_segments(0.03, 2.0 * disk, 20.0),
                    std::invalid_argument);
    // monotone decreasing in the mean area
    CHECK(an::independent_blindspot_segments(0.03, 100.0, 20.0) >=
          an::independent_blindspot_segments(0.03, disk, 20.0));
}

TEST_CASE("design solver") {
    CHECK_THROWS_AS(an::design_anchor_intensity(0.03, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(an::design_anchor_intensity(0.03, 0.0), std::invalid_argument);

    SECTION("round trip") {
        for (double eps : {0.01, 0.05, 0.1, 0.3}) {
            const double lstar = an::design_anchor_intensity(0.03, eps);
            const double achieved = an::asymptotic_blindspot(lstar, 0.03);
            CHECK(std::fabs(achieved - eps) <= 1e-6);
        }
    }
    SECTION("scale property") {
        const double l1 = an::design_anchor_intensity(0.03, 0.1);
        const double l2 = an::design_anchor_intensity(0.06, 0.1);
        CHECK(l2 == Catch::Approx(2.0 * l1).epsilon(1e-6));
    }
    SECTION("near-1 epsilon gives a tiny intensity") {
        const double lstar = an::design_anchor_intensity(0.03, 0.999999);
        CHECK(lstar >= 0.0);
        CHECK(an::asymptotic_blindspot(lstar, 0.03) >= 0.999998);
    }
}
