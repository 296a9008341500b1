#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cafsim/ctmc.hpp"
#include "cafsim/metrics.hpp"
#include "helpers.hpp"

using namespace cafsim;
using test::make_params;
using test::random_params;
using test::reference_params;

namespace {

Metrics solve_metrics(const SystemParams& p) {
    const StateSpace space = enumerate_states(p);
    const SteadyState pi = solve_steady_state(build_generator(space, p));
    return compute_metrics(pi, space, p);
}

// Fixed-bandwidth chain coded from scratch: every SU holds exactly `k`
// channels, no equal-share formula anywhere.
Generator constant_bandwidth_generator(const StateSpace& space, double k,
                                       const SystemParams& p) {
    const double mu_su = k * p.su_holding_rate + p.su_residence_rate;
    Generator g;
    g.dim = static_cast<int>(space.size());
    g.rates.assign(static_cast<std::size_t>(g.dim) * g.dim, 0.0);
    g.blocking_rates.assign(g.dim, 0.0);
    for (int row = 0; row < g.dim; ++row) {
        const SystemState s = space[row];
        double exit = 0.0;
        auto add = [&](const SystemState& target, double rate) {
            const int col = space.index_of(target);
            if (col < 0 || rate <= 0.0) return;
            g.at(row, col) += rate;
            exit += rate;
        };
        add({s.pu_count, s.su_count - 1}, s.su_count * mu_su);
        if (s.pu_count + (s.su_count + 1) * k <= p.channels)
            add({s.pu_count, s.su_count + 1}, p.su_arrival_rate);
        else
            g.blocking_rates[row] = p.su_arrival_rate;
        add({s.pu_count - 1, s.su_count}, s.pu_count * p.pu_service_rate);
        if (s.pu_count + 1 + s.su_count * k <= p.channels)
            add({s.pu_count + 1, s.su_count}, p.pu_arrival_rate);
        else
            add({s.pu_count + 1, s.su_count - 1}, p.pu_arrival_rate);
        g.at(row, row) = -exit;
    }
    return g;
}

}  // namespace

TEST_CASE("single-channel closed forms") {
    const SystemParams p = make_params(1, 1, 1, /*lambda_p=*/0.0);
    const Metrics m = solve_metrics(p);
    const double pb = 7.2 / 9.2;
    CHECK(m.blocking_probability == doctest::Approx(pb).epsilon(1e-12));
    CHECK(m.dropping_probability == doctest::Approx(0.0));
    CHECK(m.utilization == doctest::Approx(pb).epsilon(1e-12));
    CHECK(m.throughput == doctest::Approx((1.0 - pb) * 7.2).epsilon(1e-12));
}

TEST_CASE("single-channel chain with PU interference, solved by hand") {
    const double lambda_p = 1.3, lambda_s = 7.2, mu_p = 0.45, mu_s = 2.0;
    const SystemParams p = make_params(1, 1, 1, lambda_p, lambda_s, mu_p);
    // Unnormalized masses from the three balance equations.
    const double at_empty = 1.0;
    const double with_su = lambda_s / (mu_s + lambda_p);
    const double with_pu = lambda_p * (at_empty + with_su) / mu_p;
    const double total = at_empty + with_su + with_pu;

    const Metrics m = solve_metrics(p);
    CHECK(m.blocking_probability ==
          doctest::Approx((with_su + with_pu) / total).epsilon(1e-12));
    CHECK(m.dropping_probability ==
          doctest::Approx(lambda_p * with_su / (lambda_s * at_empty)).epsilon(1e-12));
    CHECK(m.utilization == doctest::Approx(with_su / total).epsilon(1e-12));
    CHECK(m.throughput == doctest::Approx(mu_s * with_su / total).epsilon(1e-12));
}

TEST_CASE("blocking probability equals the blocked-state mass") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 30; ++k) {
        const SystemParams p = random_params(rng);
        const StateSpace space = enumerate_states(p);
        const SteadyState pi = solve_steady_state(build_generator(space, p));
        double mass = 0.0;
        for (std::size_t i = 0; i < space.size(); ++i)
            if (!admits_su(space[i], p)) mass += pi.probabilities[i];
        CHECK(blocking_probability(pi, space, p) == doctest::Approx(mass).epsilon(1e-12));
    }
}

TEST_CASE("metric ranges and the rate-conservation identity") {
    std::mt19937_64 rng(47);
    for (int k = 0; k < 60; ++k) {
        const SystemParams p = random_params(rng);
        const Metrics m = solve_metrics(p);
        CHECK(m.blocking_probability >= 0.0);
        CHECK(m.blocking_probability <= 1.0 + 1e-12);
        CHECK(m.dropping_probability >= 0.0);
        CHECK(m.dropping_probability <= 1.0 + 1e-12);
        CHECK(m.utilization >= 0.0);
        CHECK(m.utilization <= 1.0 + 1e-12);
        CHECK(m.throughput >= 0.0);
        CHECK(m.throughput <= p.su_arrival_rate + 1e-12);
        const double expected = (1.0 - m.blocking_probability) * (1.0 - m.dropping_probability) *
                                p.su_arrival_rate;
        CHECK(std::abs(m.throughput - expected) <= 1e-9);
        if (p.pu_arrival_rate == 0.0) CHECK(m.dropping_probability == 0.0);
    }
}

TEST_CASE("equal sharing with b_max == b_min equals an independent fixed-bandwidth model") {
    for (double k : {2.0, 4.0}) {
        for (double lambda_p : {0.5, 2.0, 4.5}) {
            const SystemParams p = reference_params(k, k, lambda_p);
            const StateSpace space = enumerate_states(p);
            const Generator ours = build_generator(space, p);
            const Generator oracle = constant_bandwidth_generator(space, k, p);
            REQUIRE(ours.dim == oracle.dim);
            for (std::size_t i = 0; i < ours.rates.size(); ++i)
                CHECK(ours.rates[i] == oracle.rates[i]);
            for (int i = 0; i < ours.dim; ++i)
                CHECK(ours.blocking_rates[i] == oracle.blocking_rates[i]);

            const SteadyState pi = solve_steady_state(ours);
            const SteadyState pi_oracle = solve_steady_state(oracle);
            const Metrics m = compute_metrics(pi, space, p);
            const Metrics m_oracle = compute_metrics(pi_oracle, space, p);
            CHECK(m.blocking_probability == m_oracle.blocking_probability);
            CHECK(m.dropping_probability == m_oracle.dropping_probability);
            CHECK(m.utilization == m_oracle.utilization);
            CHECK(m.throughput == m_oracle.throughput);
        }
    }
}

TEST_CASE("blocking and dropping grow with the PU load") {
    double prev_pb = -1.0, prev_pd = -1.0;
    for (double lambda_p : {0.5, 2.0, 4.0}) {
        const Metrics m = solve_metrics(reference_params(2, 4, lambda_p));
        CHECK(m.blocking_probability > prev_pb);
        CHECK(m.dropping_probability > prev_pd);
        prev_pb = m.blocking_probability;
        prev_pd = m.dropping_probability;
    }
}

TEST_CASE("dropping probability is undefined when every arrival blocks") {
    const SystemParams p = make_params(1, 1, 1, 1.3);
    const StateSpace space = enumerate_states(p);
    SteadyState pi;
    pi.probabilities = {0.0, 0.5, 0.5};  // all mass on blocked states
    CHECK_THROWS_AS(dropping_probability(pi, space, p), std::domain_error);
}
