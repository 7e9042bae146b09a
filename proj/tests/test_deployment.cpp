#include <stdexcept>

#include "doctest.h"
#include "greenwifi/deployment.hpp"

using namespace greenwifi;

namespace {

Deployment two_link_deployment() {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{25.0, 50.0, 3.0}, {75.0, 50.0, 3.0}};
    d.client_positions = {{25.0, 40.0, 1.0}, {75.0, 60.0, 1.0}};
    d.links = {{0, 0}, {1, 1}};
    return d;
}

}  // namespace

TEST_CASE("deployment: validation catches broken invariants") {
    Deployment d = two_link_deployment();
    CHECK_NOTHROW(d.validate());

    Deployment bad = d;
    bad.links = {{0, 0}, {0, 0}};  // client 1 unlinked, client 0 twice
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = d;
    bad.links[1].first = 7;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = d;
    bad.client_positions[0].x = 101.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = d;
    bad.ap_positions[0].z = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("deployment: toml round trip preserves 6-decimal coordinates") {
    Deployment d = two_link_deployment();
    d.ap_positions[0].x = 25.1234567;  // beyond 6 decimals: expect rounding
    const std::string text = deployment_to_toml(d);
    CHECK(text.find("[area]") != std::string::npos);
    CHECK(text.find("[aps]") != std::string::npos);
    CHECK(text.find("[clients]") != std::string::npos);
    CHECK(text.find("[links]") != std::string::npos);
    CHECK(text.find("25.123457") != std::string::npos);

    Deployment back = deployment_from_toml(text);
    CHECK(back.area_size == d.area_size);
    REQUIRE(back.ap_positions.size() == 2);
    CHECK(back.ap_positions[0].x == doctest::Approx(25.123457).epsilon(1e-9));
    CHECK(back.links == d.links);

    // Second round trip is exact: 6 decimals are already fixed.
    CHECK(deployment_to_toml(back) == deployment_to_toml(back));
    Deployment twice = deployment_from_toml(deployment_to_toml(back));
    CHECK(twice.ap_positions[0].x == back.ap_positions[0].x);
}

TEST_CASE("deployment: topology extraction") {
    Deployment d = two_link_deployment();
    d.ap_positions = {{50.0, 50.0, 3.0}};
    d.links = {{0, 0}, {0, 1}};
    const LinkTopology topo = topology_of(d);
    CHECK(topo.n_links() == 2);
    CHECK(topo.shares_transmitter(0, 1));
}
