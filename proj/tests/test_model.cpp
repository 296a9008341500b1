#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "cafsim/model.hpp"
#include "helpers.hpp"

using namespace cafsim;
using test::make_params;
using test::random_params;

TEST_CASE("feasibility follows the capacity predicate") {
    const SystemParams p = make_params(4, 2, 3);
    CHECK(is_feasible({0, 0}, p));
    CHECK(is_feasible({2, 1}, p));   // 2 + 1*2 <= 4
    CHECK(!is_feasible({3, 1}, p));  // 3 + 2 > 4
    CHECK(!is_feasible({5, 0}, p));  // more PUs than channels
    CHECK(!is_feasible({0, 3}, p));  // more SUs than floor(4/2)
    CHECK(!is_feasible({-1, 0}, p));
    CHECK(!is_feasible({0, -1}, p));

    // The empty system is feasible whatever the constants.
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) CHECK(is_feasible({0, 0}, random_params(rng)));
}

TEST_CASE("parameter invariants are enforced") {
    CHECK(make_params(12, 2, 4).valid());
    CHECK(!make_params(0, 1, 1).valid());
    CHECK(!make_params(4, 0.5, 2).valid());   // b_min < 1
    CHECK(!make_params(4, 3, 2).valid());     // b_max < b_min
    CHECK(!make_params(4, 2, 5).valid());     // b_max > channels
    SystemParams p = make_params(4, 2, 3);
    p.su_arrival_rate = 0.0;
    CHECK(!p.valid());
    p = make_params(4, 2, 3, /*lambda_p=*/0.0);
    CHECK(p.valid());  // PU arrivals may be absent entirely
}

TEST_CASE("state enumeration is lexicographic and complete") {
    const std::vector<SystemState> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                               {2, 0}, {2, 1}, {3, 0}, {4, 0}};
    const StateSpace space = enumerate_states(make_params(4, 2, 3));
    CHECK(space.states() == expected);
    CHECK(space.size() == 9);

    const StateSpace tiny = enumerate_states(make_params(1, 1, 1));
    CHECK(tiny.states() == std::vector<SystemState>{{0, 0}, {0, 1}, {1, 0}});

    // 12 channels with b_min 2: sum over su of (12 - 2 su + 1) states.
    CHECK(enumerate_states(make_params(12, 2, 4)).size() == 49);

    CHECK_THROWS_AS(enumerate_states(make_params(0, 1, 1)), std::invalid_argument);
}

TEST_CASE("enumeration equals a brute-force filter of the full grid") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 100; ++k) {
        const SystemParams p = random_params(rng);
        const StateSpace space = enumerate_states(p);
        std::vector<SystemState> brute;
        for (int pu = 0; pu <= p.channels; ++pu)
            for (int su = 0; su <= p.max_su_count(); ++su)
                if (is_feasible({pu, su}, p)) brute.push_back({pu, su});
        REQUIRE(space.states() == brute);
        for (std::size_t i = 0; i < space.size(); ++i)
            CHECK(space.index_of(space[i]) == static_cast<int>(i));
        CHECK(space.index_of({p.channels + 1, 0}) == -1);
        for (int pu = 0; pu <= p.channels; ++pu)
            for (int su = 0; su <= p.max_su_count(); ++su)
                if (!is_feasible({pu, su}, p)) CHECK(space.index_of({pu, su}) == -1);
    }
}

TEST_CASE("equal-share bandwidth") {
    const SystemParams wide = make_params(12, 2, 4);
    CHECK(bandwidth({0, 1}, wide) == doctest::Approx(4.0));  // abundant spectrum caps at b_max
    CHECK(bandwidth({8, 2}, wide) == doctest::Approx(2.0));  // (12-8)/2 hits b_min exactly
    CHECK(bandwidth({3, 0}, wide) == 0.0);

    const SystemParams narrow = make_params(5, 1, 2);
    CHECK(bandwidth({1, 3}, narrow) == doctest::Approx(4.0 / 3.0));  // fractional sharing

    CHECK_THROWS_AS(bandwidth({13, 0}, wide), std::invalid_argument);
    CHECK_THROWS_AS(bandwidth({11, 1}, wide), std::invalid_argument);
}

TEST_CASE("per-SU service rate") {
    const SystemParams p = make_params(12, 2, 4);
    CHECK(su_service_rate({0, 1}, p) == doctest::Approx(5.0));  // 4*1 + 1
    CHECK(su_service_rate({8, 2}, p) == doctest::Approx(3.0));  // 2*1 + 1
    CHECK(su_service_rate({5, 0}, p) == 0.0);
}

TEST_CASE("transition rates on the 4-channel example") {
    const SystemParams p = make_params(4, 2, 3, /*lambda_p=*/1.3);
    // Normal PU arrival: 1 + 1 + 2 <= 4.
    CHECK(transition_rate({1, 1}, {2, 1}, p) == doctest::Approx(1.3));
    CHECK(transition_rate({1, 1}, {2, 0}, p) == 0.0);
    // Dropping: 2 + 1 + 2 > 4 pushes the chain to (3, 0).
    CHECK(transition_rate({2, 1}, {3, 0}, p) == doctest::Approx(1.3));
    CHECK(transition_rate({2, 1}, {3, 1}, p) == 0.0);
    // SU departure with share min{3, max{2, 2}} = 2: rate 2 * (2*1 + 1).
    CHECK(transition_rate({0, 2}, {0, 1}, p) == doctest::Approx(6.0));
    // SU admission only where one more fits.
    CHECK(transition_rate({0, 1}, {0, 2}, p) == doctest::Approx(7.2));
    CHECK(transition_rate({1, 1}, {1, 2}, p) == 0.0);
    // PU departure.
    CHECK(transition_rate({2, 1}, {1, 1}, p) == doctest::Approx(2 * 0.45));
    // No SU to depart.
    CHECK(transition_rate({2, 0}, {2, -1}, p) == 0.0);
    // Distant pairs never connect.
    CHECK(transition_rate({0, 0}, {2, 0}, p) == 0.0);
    CHECK(transition_rate({0, 0}, {1, 1}, p) == 0.0);
    CHECK(transition_rate({2, 1}, {1, 0}, p) == 0.0);

    CHECK_THROWS_AS(transition_rate({3, 1}, {3, 0}, p), std::invalid_argument);
}

TEST_CASE("blocking self-rate") {
    const SystemParams p = make_params(4, 2, 3, 1.0, /*lambda_s=*/7.2);
    CHECK(blocking_rate({1, 1}, p) == doctest::Approx(7.2));  // 1 + 2*2 > 4
    CHECK(blocking_rate({0, 0}, p) == 0.0);
    const SystemParams twelve = make_params(12, 2, 4);
    CHECK(blocking_rate({0, 6}, twelve) == doctest::Approx(7.2));  // 0 + 7*2 > 12
    CHECK(blocking_rate({0, 5}, twelve) == 0.0);
}

TEST_CASE("bandwidth, admission and drop properties hold on random instances") {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 200; ++k) {
        const SystemParams p = random_params(rng);
        const StateSpace space = enumerate_states(p);
        for (const SystemState& s : space.states()) {
            const double share = bandwidth(s, p);
            if (s.su_count == 0) {
                CHECK(share == 0.0);
            } else {
                CHECK(share >= p.min_bandwidth - 1e-9);
                CHECK(share <= p.max_bandwidth + 1e-9);
                CHECK(s.su_count * share <= p.channels - s.pu_count + 1e-9);
            }

            // An SU arrival is either admitted or blocked, never both.
            const bool admitted = transition_rate(s, {s.pu_count, s.su_count + 1}, p) > 0.0;
            const bool blocked = blocking_rate(s, p) > 0.0;
            CHECK(admitted != blocked);

            // A PU arrival below capacity is either absorbed or drops exactly
            // one SU; at capacity it does nothing.
            const bool normal = transition_rate(s, {s.pu_count + 1, s.su_count}, p) > 0.0;
            const bool drop = transition_rate(s, {s.pu_count + 1, s.su_count - 1}, p) > 0.0;
            if (p.pu_arrival_rate > 0.0) {
                if (s.pu_count < p.channels)
                    CHECK(normal != drop);
                else
                    CHECK((!normal && !drop));
            }
        }
    }
}

TEST_CASE("constant aggregation is the degenerate equal share") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 50; ++k) {
        SystemParams p = random_params(rng);
        p.max_bandwidth = p.min_bandwidth;
        const StateSpace space = enumerate_states(p);
        for (const SystemState& s : space.states())
            if (s.su_count >= 1) CHECK(bandwidth(s, p) == p.min_bandwidth);
    }
}

TEST_CASE("rates are zero between states more than one event apart") {
    const SystemParams p = make_params(6, 1.5, 3);
    const StateSpace space = enumerate_states(p);
    for (const SystemState& from : space.states()) {
        for (const SystemState& to : space.states()) {
            const int dpu = to.pu_count - from.pu_count;
            const int dsu = to.su_count - from.su_count;
            const bool one_event = (dpu == 0 && dsu == -1) || (dpu == 0 && dsu == 1) ||
                                   (dpu == -1 && dsu == 0) || (dpu == 1 && dsu == 0) ||
                                   (dpu == 1 && dsu == -1);
            if (!one_event) CHECK(transition_rate(from, to, p) == 0.0);
            CHECK(transition_rate(from, to, p) >= 0.0);
        }
    }
}
