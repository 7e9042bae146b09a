#include <stdexcept>

#include "doctest.h"
#include "greenwifi/mcs.hpp"
#include "greenwifi/radio.hpp"

using namespace greenwifi;

TEST_CASE("mcs: step lookup semantics") {
    const McsTable table({{1.0, 10.0}, {10.0, 50.0}});
    CHECK(table.rate_for_sinr(0.0) == 0.0);
    CHECK(table.rate_for_sinr(0.999) == 0.0);
    CHECK(table.rate_for_sinr(1.0) == 10.0);  // right-continuous: threshold included
    CHECK(table.rate_for_sinr(5.0) == 10.0);
    CHECK(table.rate_for_sinr(10.0) == 50.0);
    CHECK(table.rate_for_sinr(1e9) == 50.0);
}

TEST_CASE("mcs: inverse lookup and round trip") {
    const McsTable table({{1.0, 10.0}, {10.0, 50.0}});
    CHECK(table.min_sinr_for_rate(0.0) == 0.0);
    CHECK(table.min_sinr_for_rate(50.0) == 10.0);
    for (const McsStep& s : table.steps())
        CHECK(table.rate_for_sinr(table.min_sinr_for_rate(s.rate_mbps)) == s.rate_mbps);
    CHECK_THROWS_AS(table.min_sinr_for_rate(33.0), std::domain_error);
}

TEST_CASE("mcs: ladder indexing") {
    const McsTable table({{1.0, 10.0}, {10.0, 50.0}});
    CHECK(table.rate_at(0) == 0.0);
    CHECK(table.rate_at(1) == 10.0);
    CHECK(table.rate_at(2) == 50.0);
    CHECK_THROWS_AS(table.rate_at(3), std::domain_error);
    CHECK_THROWS_AS(table.rate_at(-1), std::domain_error);
}

TEST_CASE("mcs: construction rejects non-monotone tables") {
    CHECK_THROWS_AS(McsTable({}), std::invalid_argument);
    CHECK_THROWS_AS(McsTable({{1.0, 10.0}, {1.0, 20.0}}), std::invalid_argument);
    CHECK_THROWS_AS(McsTable({{1.0, 10.0}, {2.0, 10.0}}), std::invalid_argument);
    CHECK_THROWS_AS(McsTable({{-1.0, 10.0}}), std::invalid_argument);
    CHECK_THROWS_AS(McsTable({{2.0, 20.0}, {1.0, 30.0}}), std::invalid_argument);
}

TEST_CASE("mcs: rate_for_sinr is nondecreasing") {
    const McsTable& table = default_mcs_table();
    double prev = -1.0;
    for (double g = 0.0; g < 3000.0; g += 0.37) {
        const double r = table.rate_for_sinr(g);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("mcs: shipped default table") {
    const McsTable& table = default_mcs_table();
    CHECK(table.size() == 10);
    CHECK(table.top_rate() == doctest::Approx(390.0));
    // First step sits at 2 dB, top step at 31 dB.
    CHECK(linear_to_db(table.steps().front().sinr_threshold) == doctest::Approx(2.0));
    CHECK(linear_to_db(table.steps().back().sinr_threshold) == doctest::Approx(31.0));
}

TEST_CASE("mcs: db pair loader converts thresholds") {
    const McsTable table = mcs_table_from_db_pairs({{0.0, 10.0}, {10.0, 20.0}});
    CHECK(table.steps()[0].sinr_threshold == doctest::Approx(1.0));
    CHECK(table.steps()[1].sinr_threshold == doctest::Approx(10.0));
}
