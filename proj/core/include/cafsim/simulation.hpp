#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "cafsim/metrics.hpp"
#include "cafsim/model.hpp"
#include "cafsim/spectrum_map.hpp"

namespace cafsim {

struct SimConfig {
    SystemParams params;
    std::uint64_t max_events = 1'000'000;   // total jump-chain events per replication
    std::uint64_t warmup_events = 100'000;  // leading events excluded from estimators
    std::uint64_t seed = 1;                 // replication r runs with seed + r
    int replications = 20;
    bool track_spectrum_map = false;

    std::vector<std::string> violations() const;
    bool valid() const { return violations().empty(); }
};

/// Cumulative event tallies. All counts and integrals add up from the start
/// of the run; window_since() turns two snapshots into a post-warmup window.
struct SimCounters {
    std::uint64_t su_arrivals = 0;
    std::uint64_t su_blocked = 0;
    std::uint64_t su_admitted = 0;
    std::uint64_t su_dropped = 0;
    std::uint64_t su_departed = 0;
    std::uint64_t pu_arrivals = 0;
    std::uint64_t pu_lost = 0;  // arrivals finding every channel PU-occupied
    std::uint64_t pu_departed = 0;
    double occupancy_integral = 0.0;  // integral of su_count * bandwidth dt
    double elapsed = 0.0;
    int su_in_system_start = 0;  // SUs present when the window opened
    int su_in_system_end = 0;    // SUs present at the last counted event

    SimCounters window_since(const SimCounters& start) const;
    SimCounters& operator+=(const SimCounters& other);
};

enum class EventKind : std::uint8_t {
    SuAdmitted,
    SuBlocked,
    SuDeparted,
    PuAdmitted,
    PuDroppedSu,  // PU admitted at the cost of one ongoing SU
    PuLost,       // PU arrival with every channel already PU-occupied
    PuDeparted,
};
const char* to_string(EventKind kind);

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::SuAdmitted;
    SystemState state;          // state after the event
    double su_bandwidth = 0.0;  // per-SU share after the event
};

/// Exact jump-chain sampler of the sharing strategy: in each state the next
/// event is drawn from the competing exponentials (SU/PU arrival, SU/PU
/// departure) whose rates come straight from the shared model functions, and
/// the holding time is Exponential(total rate). Statistically equivalent to
/// per-entity timers because every duration is memoryless.
class Simulation {
  public:
    Simulation(const SystemParams& params, std::uint64_t seed, bool track_map = false);

    SimEvent step();

    const SystemState& state() const { return table_[state_index_].state; }
    double now() const { return now_; }
    const SimCounters& counters() const { return counters_; }

    /// Canonical layout for the current state; tracking must be enabled.
    const SpectrumMap& spectrum_map() const;

  private:
    // Everything the event loop needs about one state, precomputed from the
    // shared model functions so the hot path is table lookups plus sampling.
    struct StateTable {
        SystemState state;
        double bandwidth = 0.0;       // per-SU share
        double occupancy = 0.0;       // su_count * bandwidth
        double su_depart = 0.0;       // su_count * su_service_rate
        double pu_depart = 0.0;       // pu_count * pu_service_rate
        double total = 0.0;           // all four competing rates
        int su_arrival_target = -1;   // -1: arrival would be blocked
        int pu_arrival_target = -1;   // -1: every channel PU-occupied
        bool pu_arrival_is_drop = false;
        int su_departure_target = -1;
        int pu_departure_target = -1;
    };

    double uniform01();
    double exponential(double rate);

    SystemParams params_;
    std::mt19937_64 rng_;
    std::vector<StateTable> table_;
    int state_index_ = 0;  // index of the empty state at construction
    double now_ = 0.0;
    SimCounters counters_{};
    bool track_map_ = false;
    SpectrumMap map_;
};

struct SimResult {
    Metrics metrics;     // estimators averaged across replications
    Metrics half_width;  // 95% normal-approximation half-widths (nan when replications == 1)
    SimCounters counters;  // post-warmup windows summed across replications
    int replications = 1;
    bool dropping_defined = true;  // false when some replication admitted no SU
};

/// Runs `cfg.replications` independent replications (seed, seed+1, ...) and
/// merges them in replication order, so results do not depend on scheduling.
/// Replications run concurrently when hardware allows. When `trace` is given,
/// replication 0 writes one JSON line per event (plus a spectrum-map line
/// when tracking is on). Throws std::invalid_argument on an invalid config.
SimResult simulate(const SimConfig& cfg, std::ostream* trace = nullptr);

}  // namespace cafsim
