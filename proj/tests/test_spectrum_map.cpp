#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cafsim/simulation.hpp"
#include "cafsim/spectrum_map.hpp"
#include "helpers.hpp"

using namespace cafsim;
using test::make_params;

TEST_CASE("fractional sharing packs one whole channel plus one third per SU") {
    // 5 channels, one PU, three SUs sharing the other four: 4/3 each.
    const SystemParams p = make_params(5, 1, 2);
    const SystemState s{1, 3};
    const SpectrumMap map = build_spectrum_map(s, p);

    CHECK(spectrum_map_violations(map, s, p).empty());
    REQUIRE(map.su_allocations.size() == 3);
    for (const auto& alloc : map.su_allocations) {
        CHECK(alloc.total == doctest::Approx(4.0 / 3.0));
        REQUIRE(alloc.pieces.size() == 2);  // one whole channel + one fragment
        CHECK(alloc.pieces[0].second == doctest::Approx(1.0));
        CHECK(alloc.pieces[1].second == doctest::Approx(1.0 / 3.0));
    }
    CHECK(map.channels[0].pu);
    CHECK(map.channels[0].shares.empty());

    const FragmentCensus census = fragment_census(map, p);
    CHECK(census.total_fragments == 3);
    CHECK(census.max_per_su == 1);
    CHECK(census.bound == 5);
    CHECK(census.within_bound);
}

TEST_CASE("integral shares mean pure aggregation, zero fragments") {
    const SystemParams p = make_params(12, 2, 4);
    const SpectrumMap map = build_spectrum_map({0, 3}, p);  // each SU gets 4 whole channels
    CHECK(spectrum_map_violations(map, {0, 3}, p).empty());
    const FragmentCensus census = fragment_census(map, p);
    CHECK(census.total_fragments == 0);
    CHECK(census.max_per_su == 0);
    for (const auto& alloc : map.su_allocations) CHECK(alloc.pieces.size() == 4);
}

TEST_CASE("a remainder splits across a channel boundary only when forced") {
    // 12 channels, 2 PUs, 4 SUs: share 2.5, remainders 0.5+0.5 fill channels
    // exactly, never splitting.
    const SystemParams p = make_params(12, 2, 4);
    SpectrumMap map = build_spectrum_map({2, 4}, p);
    CHECK(spectrum_map_violations(map, {2, 4}, p).empty());
    CHECK(fragment_census(map, p).max_per_su == 1);

    // 12 channels, 3 PUs, 4 SUs: share 2.25; the second 0.25 remainder lands
    // whole, and so do the rest: 4 fragments in one channel.
    map = build_spectrum_map({3, 4}, p);
    CHECK(spectrum_map_violations(map, {3, 4}, p).empty());
    const FragmentCensus census = fragment_census(map, p);
    CHECK(census.total_fragments == 4);
    CHECK(census.max_per_su == 1);

    // 2 PUs, 5 SUs: share 2 exactly (b_min), zero fragments.
    map = build_spectrum_map({2, 5}, p);
    CHECK(fragment_census(map, p).total_fragments == 0);
}

TEST_CASE("every feasible state of several models packs conservatively") {
    for (const SystemParams& p : {make_params(12, 2, 4), make_params(12, 1, 4),
                                  make_params(9, 1.5, 3), make_params(5, 1, 2),
                                  make_params(7, 2.5, 6.5)}) {
        const StateSpace space = enumerate_states(p);
        for (const SystemState& s : space.states()) {
            const SpectrumMap map = build_spectrum_map(s, p);
            const auto violations = spectrum_map_violations(map, s, p);
            CHECK_MESSAGE(violations.empty(), "state (" << s.pu_count << "," << s.su_count
                                                        << "): "
                                                        << (violations.empty()
                                                                ? std::string("ok")
                                                                : violations.front()));
            CHECK(fragment_census(map, p).max_per_su <= 2);
        }
    }
}

TEST_CASE("12-channel b_min=2 layouts never exceed six fragments") {
    const SystemParams p = make_params(12, 2, 4);
    int worst = 0;
    const StateSpace space = enumerate_states(p);
    for (const SystemState& s : space.states()) {
        const FragmentCensus census = fragment_census(build_spectrum_map(s, p), p);
        worst = std::max(worst, census.total_fragments);
        CHECK(census.within_bound);
    }
    CHECK(worst <= 6);
    CHECK(worst > 0);  // fragmentation does occur somewhere
}

TEST_CASE("tracked simulation keeps the map consistent at every step") {
    const SystemParams p = make_params(6, 1.5, 3, 1.5);
    Simulation sim(p, 13, /*track_map=*/true);
    for (int n = 0; n < 5'000; ++n) {
        sim.step();
        const auto violations = spectrum_map_violations(sim.spectrum_map(), sim.state(), p);
        REQUIRE_MESSAGE(violations.empty(),
                        (violations.empty() ? std::string("ok") : violations.front()));
    }

    Simulation untracked(p, 13);
    CHECK_THROWS_AS(untracked.spectrum_map(), std::logic_error);
}

TEST_CASE("map JSON names channel uses") {
    const SystemParams p = make_params(5, 1, 2);
    const std::string json = to_json(build_spectrum_map({1, 3}, p));
    CHECK(json.find("{\"channels\":[{\"use\":\"pu\"}") == 0);
    CHECK(json.find("\"use\":\"su\"") != std::string::npos);
    CHECK(json.find("\"shares\":[[0,") != std::string::npos);
}
