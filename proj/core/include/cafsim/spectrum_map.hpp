#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cafsim/model.hpp"

namespace cafsim {

/// One SU's piece of one channel. `fraction` is in (0, 1]; a whole channel a
/// single SU aggregates appears as fraction 1.
struct SpectrumShare {
    int su = 0;
    double fraction = 0.0;
};

struct ChannelOccupancy {
    bool pu = false;                   // a PU holds the whole channel
    std::vector<SpectrumShare> shares; // SU pieces, fractions sum to <= 1
};

struct SuAllocation {
    double total = 0.0;                              // equals bandwidth(state)
    std::vector<std::pair<int, double>> pieces;      // (channel, width)
};

/// Concrete per-channel layout realizing the equal-share bandwidths of a
/// state. Diagnostic only: the (pu, su) dynamics never look at it.
struct SpectrumMap {
    std::vector<ChannelOccupancy> channels;
    std::vector<SuAllocation> su_allocations;  // index = SU id, 0 .. su_count-1
};

/// Canonical packing for a state: PUs hold channels 0 .. pu_count-1, each SU
/// first takes floor(share) whole channels, and the fractional remainders are
/// packed left to right, splitting a remainder across a channel boundary only
/// when forced. Every SU therefore holds at most 2 sub-channel fragments.
SpectrumMap build_spectrum_map(const SystemState& s, const SystemParams& p);

struct FragmentCensus {
    int total_fragments = 0;  // sub-channel (fraction < 1) pieces in the map
    int max_per_su = 0;
    int bound = 0;            // floor(channels / min_bandwidth)
    bool within_bound = true;
};

/// Counts sub-channel fragments and reports them against the
/// floor(N / B_m) bound. The bound is a diagnostic, not an invariant of the
/// packing.
FragmentCensus fragment_census(const SpectrumMap& map, const SystemParams& p);

/// Conservation violations of a map against its state: per-SU totals must
/// equal bandwidth(state) within 1e-9, per-channel fraction sums must stay
/// within 1 + 1e-12, PU channels must carry no SU share, and the grand total
/// must equal su_count * bandwidth(state). Empty when the map is sound.
std::vector<std::string> spectrum_map_violations(const SpectrumMap& map, const SystemState& s,
                                                 const SystemParams& p);

/// Single-line JSON rendering used by the event trace.
std::string to_json(const SpectrumMap& map);

}  // namespace cafsim
