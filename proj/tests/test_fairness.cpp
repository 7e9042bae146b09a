#include <cmath>
#include <random>

#include "doctest.h"
#include "greenwifi/fairness.hpp"
#include "support/oracles.hpp"

using namespace greenwifi;
using namespace greenwifi::testing;

TEST_CASE("u_alpha: branch values") {
    CHECK(u_alpha(std::exp(1.0), 1.0) == doctest::Approx(1.0));
    CHECK(u_alpha(100.0, 0.0) == doctest::Approx(100.0));
    CHECK(u_alpha(4.0, 0.5) == doctest::Approx(4.0));  // 4^0.5 / 0.5
    CHECK(u_alpha(0.0, 1.0) == -std::numeric_limits<double>::infinity());
    CHECK(u_alpha(0.0, 2.0) == -std::numeric_limits<double>::infinity());
    CHECK(u_alpha(0.0, 0.5) == 0.0);
    CHECK_THROWS_AS(u_alpha(-1.0, 1.0), std::domain_error);
}

TEST_CASE("mean_throughput: generalized means") {
    CHECK(mean_throughput({100.0, 100.0}, 0.0) == doctest::Approx(100.0));
    CHECK(mean_throughput({100.0, 100.0}, 1.0) == doctest::Approx(100.0));
    CHECK(mean_throughput({100.0, 100.0}, 2.7) == doctest::Approx(100.0));
    CHECK(mean_throughput({10.0, 1000.0}, 1.0) == doctest::Approx(100.0));
    CHECK(mean_throughput({10.0, 1000.0}, 0.0) == doctest::Approx(505.0));
    // harmonic mean at alpha = 2
    CHECK(mean_throughput({10.0, 1000.0}, 2.0) == doctest::Approx(2.0 / (0.1 + 0.001)));
    // zero rate collapses the mean for alpha >= 1 only
    CHECK(mean_throughput({0.0, 1000.0}, 1.0) == 0.0);
    CHECK(mean_throughput({0.0, 1000.0}, 2.0) == 0.0);
    CHECK(mean_throughput({0.0, 1000.0}, 0.0) == doctest::Approx(500.0));
}

TEST_CASE("objective_u_hat: direct evaluation") {
    CHECK(objective_u_hat({100.0, 100.0}, {10.0, 10.0}, 1.0, 1000.0) ==
          doctest::Approx(100.0 / 2020.0));
    CHECK(objective_u_hat({0.0, 0.0}, {0.0, 0.0}, 1.0, 1000.0) == 0.0);
}

TEST_CASE("objective_u_hat: alpha=0 equals global energy efficiency over N") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 4;
        RateVector r(n);
        PowerVector p(n);
        double sum_r = 0.0, sum_p = 0.0;
        const double pc = uniform_in(rng, 1.0, 500.0);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = uniform_in(rng, 0.0, 400.0);
            p[i] = uniform_in(rng, 0.0, 40.0);
            sum_r += r[i];
            sum_p += p[i] + pc;
        }
        const double gee_over_n = sum_r / (static_cast<double>(n) * sum_p);
        CHECK(objective_u_hat(r, p, 0.0, pc) == doctest::Approx(gee_over_n).epsilon(1e-12));
    }
}

TEST_CASE("v_of/w_of: decomposition identity on random feasible instances") {
    int verified = 0;
    for (std::uint64_t seed = 0; verified < 100 && seed < 2000; ++seed) {
        const RandomInstance inst = make_random_instance(seed);
        const PowerContext ctx = inst.context();
        std::mt19937_64 rng(mix_seed(seed, 81));
        const RateVector r = random_rates(inst, rng);
        const double alpha = std::vector<double>{0.0, 0.5, 1.0, 2.0}[seed % 4];

        const auto report = ctx.evaluate(r);
        if (!report.feasible) continue;
        const auto w = w_of(r, ctx);
        REQUIRE(w.has_value());

        const double log_u_hat = std::log(objective_u_hat(r, report.powers, alpha,
                                                          inst.radio.circuit_power_mw));
        const double decomposed = v_of(r, alpha) - *w;
        if (std::isinf(log_u_hat)) {
            CHECK(std::isinf(decomposed));
        } else {
            CHECK(decomposed == doctest::Approx(log_u_hat).epsilon(1e-9));
        }
        ++verified;
    }
    CHECK(verified == 100);
}

TEST_CASE("w_of: all-idle equals log(N p_c), infeasible is nullopt") {
    const RandomInstance inst = make_random_instance(3);
    const PowerContext ctx = inst.context();
    const RateVector zeros(static_cast<std::size_t>(inst.n_links()), 0.0);
    CHECK(*w_of(zeros, ctx) ==
          doctest::Approx(std::log(inst.n_links() * inst.radio.circuit_power_mw)));

    GainMatrices hot;
    hot.a.resize(2, 2);
    hot.a << 1.0, 0.1, 0.1, 1.0;
    hot.b = Eigen::MatrixXd::Zero(2, 2);
    hot.noise = Eigen::VectorXd::Ones(2);
    const McsTable strong({{20.0, 100.0}});
    RadioConfig radio;
    const PowerContext hot_ctx{&hot, &strong, &radio, LinkTopology{{0, 1}}, PowerPolicy::minimal};
    CHECK_FALSE(w_of({100.0, 100.0}, hot_ctx).has_value());
}

TEST_CASE("w_of: nondecreasing in rates") {
    int verified = 0;
    for (std::uint64_t seed = 0; verified < 100 && seed < 2000; ++seed) {
        const RandomInstance inst = make_random_instance(seed);
        const PowerContext ctx = inst.context();
        std::mt19937_64 rng(mix_seed(seed, 82));
        RateVector lo = random_rates(inst, rng);
        RateVector hi = lo;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            int current = 0;
            for (int k = 1; k <= inst.table.size(); ++k)
                if (inst.table.rate_at(k) == hi[i]) current = k;
            const int bump = current + static_cast<int>(uniform_below(
                                           rng, static_cast<std::uint64_t>(inst.table.size() - current) + 1));
            hi[i] = inst.table.rate_at(bump);
        }
        const auto w_lo = w_of(lo, ctx);
        const auto w_hi = w_of(hi, ctx);
        if (!w_lo || !w_hi) continue;
        CHECK(*w_hi >= *w_lo - 1e-12);
        ++verified;
    }
    CHECK(verified == 100);
}

TEST_CASE("derivative_weights: closed forms") {
    SUBCASE("alpha=1, R=(8,2)") {
        const DerivativeWeights w = derivative_weights({8.0, 2.0}, 100.0, 1.0);
        CHECK(w.c[0] == doctest::Approx(0.0625));
        CHECK(w.c[1] == doctest::Approx(0.25));
        CHECK(w.power_coeff == doctest::Approx(0.01));
    }
    SUBCASE("alpha=0 gives uniform sum-rate weights") {
        const DerivativeWeights w = derivative_weights({8.0, 2.0, 30.0}, 5.0, 0.0);
        CHECK(w.c[0] == doctest::Approx(1.0 / 40.0));
        CHECK(w.c[1] == doctest::Approx(1.0 / 40.0));
        CHECK(w.c[2] == doctest::Approx(1.0 / 40.0));
    }
    SUBCASE("equal data, equal weights") {
        const DerivativeWeights w = derivative_weights({5.0, 5.0}, 1.0, 0.7);
        CHECK(w.c[0] == doctest::Approx(w.c[1]));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(derivative_weights({0.0, 1.0}, 1.0, 1.0), std::logic_error);
        CHECK_THROWS_AS(derivative_weights({1.0, 1.0}, 0.0, 1.0), std::logic_error);
    }
}

TEST_CASE("slot score matches the finite difference of the cumulative objective") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const double alpha = std::vector<double>{0.0, 0.5, 1.0, 2.0}[static_cast<std::size_t>(rng() % 4)];
        const double pc = uniform_in(rng, 1.0, 100.0);
        std::vector<double> R(n);
        RateVector r(n);
        PowerVector p(n);
        for (std::size_t i = 0; i < n; ++i) {
            R[i] = uniform_in(rng, 1.0, 2000.0);
            r[i] = uniform_in(rng, 0.0, 400.0);
            p[i] = uniform_in(rng, 0.0, 40.0);
        }
        const double P = uniform_in(rng, 100.0, 1e6);

        const DerivativeWeights w = derivative_weights(R, P, alpha);
        const double score = slot_score(w, r, p, pc);

        double power_now = 0.0;
        for (double pi : p) power_now += pi + pc;
        // Scale the step so every increment is ~1e-6 of its running total.
        double dt = 1e-6 * P / power_now;
        for (std::size_t i = 0; i < n; ++i)
            if (r[i] > 0.0) dt = std::min(dt, 1e-6 * R[i] / r[i]);

        std::vector<double> R2 = R;
        for (std::size_t i = 0; i < n; ++i) R2[i] += r[i] * dt;
        const double fd = (log_u_hat_cumulative(R2, P + power_now * dt, alpha) -
                           log_u_hat_cumulative(R, P, alpha)) /
                          dt;
        if (std::abs(score) < 1e-9) continue;  // degenerate direction, relative error undefined
        CHECK(std::abs(fd - score) / std::abs(score) <= 1e-3);
    }
}

TEST_CASE("v_of: strictly increasing coordinates, scale shift at alpha=1") {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 3;
        RateVector r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = uniform_in(rng, 1.0, 300.0);
        const double alpha = std::vector<double>{0.0, 0.5, 1.0, 2.0}[static_cast<std::size_t>(rng() % 4)];
        RateVector up = r;
        up[t % n] += 1.0;
        CHECK(v_of(up, alpha) > v_of(r, alpha));

        // multiplying all rates by k shifts v_of by log k at alpha = 1
        RateVector scaled = r;
        for (double& x : scaled) x *= 3.0;
        CHECK(v_of(scaled, 1.0) == doctest::Approx(v_of(r, 1.0) + std::log(3.0)).epsilon(1e-12));
    }
}
