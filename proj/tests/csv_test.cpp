#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "blindspot/csv.hpp"
#include "blindspot/rng.hpp"

using namespace blindspot;

TEST_CASE("row serialization") {
    SweepRow row;
    row.method = "mc";
    row.lambda = 0.05;
    row.lambda0 = 0.03;
    row.length = std::numeric_limits<double>::infinity();
    row.range = 20.0;
    row.k_min = 3;
    row.value = 0.159137109;
    row.stderr_ = 0.00115;
    row.n_trials = 100000;
    row.seed = 42;
    CHECK(csv::to_line(row) == "mc,0.05,0.03,inf,20,3,0.159137109,0.00115,100000,42");

    SweepRow analytic_row = row;
    analytic_row.method = "analytic_asymptotic";
    analytic_row.stderr_.reset();
    analytic_row.n_trials.reset();
    analytic_row.seed.reset();
    CHECK(csv::to_line(analytic_row) == "analytic_asymptotic,0.05,0.03,inf,20,3,0.159137109,,,");
}

TEST_CASE("parse then re-serialize is identity") {
    rng::RngStream stream(6, 0);
    for (int i = 0; i < 2000; ++i) {
        SweepRow row;
        row.method = (i % 2) ? "mc" : "analytic_asymptotic";
        row.lambda = stream.next_double() * 0.1;
        row.lambda0 = stream.next_double() * 0.1 + 1e-4;
        row.length = (i % 3) ? stream.next_double() * 40.0 + 0.1
                             : std::numeric_limits<double>::infinity();
        row.range = 20.0;
        row.k_min = 3;
        row.value = stream.next_double();
        if (i % 2) {
            row.stderr_ = stream.next_double() * 1e-2;
            row.n_trials = stream.next_u64() % 1000000;
            row.seed = stream.next_u64();
        }
        const std::string line = csv::to_line(row);
        CHECK(csv::to_line(csv::from_line(line)) == line);
    }
}

TEST_CASE("malformed lines rejected") {
    CHECK_THROWS_AS(csv::from_line("a,b,c"), std::invalid_argument);
}
