#include "cafsim/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "cafsim/format.hpp"

namespace cafsim {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? kNan : static_cast<double>(num) / static_cast<double>(den);
}

struct ReplicationOutcome {
    SimCounters window;
    Metrics metrics;
    bool dropping_defined = true;
};

Metrics estimate(const SimCounters& w, const SystemParams& p) {
    return Metrics{
        .blocking_probability = ratio(w.su_blocked, w.su_arrivals),
        .dropping_probability = ratio(w.su_dropped, w.su_admitted),
        .utilization = w.occupancy_integral / (p.channels * w.elapsed),
        .throughput = static_cast<double>(w.su_departed) / w.elapsed,
    };
}

void check_conservation(const SimCounters& w) {
    if (w.su_arrivals != w.su_blocked + w.su_admitted)
        throw std::logic_error("simulation: SU arrivals != blocked + admitted");
    if (static_cast<std::uint64_t>(w.su_in_system_start) + w.su_admitted !=
        w.su_dropped + w.su_departed + static_cast<std::uint64_t>(w.su_in_system_end))
        throw std::logic_error("simulation: SU admissions do not balance departures");
}

ReplicationOutcome run_replication(const SimConfig& cfg, std::uint64_t seed,
                                   std::ostream* trace) {
    Simulation sim(cfg.params, seed, cfg.track_spectrum_map);
    SimCounters at_warmup{};
    for (std::uint64_t n = 0; n < cfg.max_events; ++n) {
        if (n == cfg.warmup_events) at_warmup = sim.counters();
        const SimEvent ev = sim.step();
        if (trace) {
            *trace << "{\"t\":" << format_double(ev.time) << ",\"event\":\"" << to_string(ev.kind)
                   << "\",\"pu\":" << ev.state.pu_count << ",\"su\":" << ev.state.su_count
                   << ",\"su_bandwidth\":" << format_double(ev.su_bandwidth) << "}\n";
            if (cfg.track_spectrum_map)
                *trace << "{\"t\":" << format_double(ev.time)
                       << ",\"map\":" << to_json(sim.spectrum_map()) << "}\n";
        }
    }
    ReplicationOutcome out;
    out.window = sim.counters().window_since(at_warmup);
    check_conservation(out.window);
    out.metrics = estimate(out.window, cfg.params);
    out.dropping_defined = out.window.su_admitted > 0;
    return out;
}

}  // namespace

std::vector<std::string> SimConfig::violations() const {
    std::vector<std::string> v = params.violations();
    if (max_events == 0) v.push_back("events: must be positive");
    if (warmup_events >= max_events && max_events > 0)
        v.push_back("warmup: must be smaller than events");
    if (replications < 1) v.push_back("replications: must be >= 1");
    return v;
}

SimCounters SimCounters::window_since(const SimCounters& start) const {
    SimCounters w;
    w.su_arrivals = su_arrivals - start.su_arrivals;
    w.su_blocked = su_blocked - start.su_blocked;
    w.su_admitted = su_admitted - start.su_admitted;
    w.su_dropped = su_dropped - start.su_dropped;
    w.su_departed = su_departed - start.su_departed;
    w.pu_arrivals = pu_arrivals - start.pu_arrivals;
    w.pu_lost = pu_lost - start.pu_lost;
    w.pu_departed = pu_departed - start.pu_departed;
    w.occupancy_integral = occupancy_integral - start.occupancy_integral;
    w.elapsed = elapsed - start.elapsed;
    w.su_in_system_start = start.su_in_system_end;
    w.su_in_system_end = su_in_system_end;
    return w;
}

SimCounters& SimCounters::operator+=(const SimCounters& other) {
    su_arrivals += other.su_arrivals;
    su_blocked += other.su_blocked;
    su_admitted += other.su_admitted;
    su_dropped += other.su_dropped;
    su_departed += other.su_departed;
    pu_arrivals += other.pu_arrivals;
    pu_lost += other.pu_lost;
    pu_departed += other.pu_departed;
    occupancy_integral += other.occupancy_integral;
    elapsed += other.elapsed;
    su_in_system_start += other.su_in_system_start;
    su_in_system_end += other.su_in_system_end;
    return *this;
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::SuAdmitted: return "su_admitted";
        case EventKind::SuBlocked: return "su_blocked";
        case EventKind::SuDeparted: return "su_departed";
        case EventKind::PuAdmitted: return "pu_admitted";
        case EventKind::PuDroppedSu: return "pu_dropped_su";
        case EventKind::PuLost: return "pu_lost";
        case EventKind::PuDeparted: return "pu_departed";
    }
    return "unknown";
}

Simulation::Simulation(const SystemParams& params, std::uint64_t seed, bool track_map)
    : params_(params), rng_(seed), track_map_(track_map) {
    if (auto v = params.violations(); !v.empty()) {
        std::string msg = "Simulation: invalid params:";
        for (const auto& e : v) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }

    const StateSpace space = enumerate_states(params_);
    table_.resize(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
        const SystemState s = space[k];
        StateTable& entry = table_[k];
        entry.state = s;
        entry.bandwidth = bandwidth(s, params_);
        entry.occupancy = s.su_count * entry.bandwidth;
        entry.su_depart = s.su_count * su_service_rate(s, params_);
        entry.pu_depart = s.pu_count * params_.pu_service_rate;
        entry.total = params_.su_arrival_rate + params_.pu_arrival_rate + entry.su_depart +
                      entry.pu_depart;
        if (admits_su(s, params_))
            entry.su_arrival_target = space.index_of({s.pu_count, s.su_count + 1});
        if (s.pu_count < params_.channels) {
            entry.pu_arrival_is_drop = pu_arrival_drops(s, params_);
            entry.pu_arrival_target =
                entry.pu_arrival_is_drop
                    ? space.index_of({s.pu_count + 1, s.su_count - 1})
                    : space.index_of({s.pu_count + 1, s.su_count});
        }
        entry.su_departure_target = space.index_of({s.pu_count, s.su_count - 1});
        entry.pu_departure_target = space.index_of({s.pu_count - 1, s.su_count});
    }
    state_index_ = space.index_of({0, 0});

    if (track_map_) map_ = build_spectrum_map(state(), params_);
}

double Simulation::uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double Simulation::exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
}

const SpectrumMap& Simulation::spectrum_map() const {
    if (!track_map_) throw std::logic_error("Simulation: spectrum map tracking is off");
    return map_;
}

SimEvent Simulation::step() {
    const StateTable& here = table_[state_index_];

    const double hold = exponential(here.total);
    counters_.occupancy_integral += hold * here.occupancy;
    counters_.elapsed += hold;
    now_ += hold;

    EventKind kind;
    double pick = uniform01() * here.total;
    if ((pick -= params_.su_arrival_rate) < 0.0) {
        ++counters_.su_arrivals;
        if (here.su_arrival_target >= 0) {
            ++counters_.su_admitted;
            state_index_ = here.su_arrival_target;
            kind = EventKind::SuAdmitted;
        } else {
            ++counters_.su_blocked;
            kind = EventKind::SuBlocked;
        }
    } else if ((pick -= params_.pu_arrival_rate) < 0.0) {
        ++counters_.pu_arrivals;
        if (here.pu_arrival_target < 0) {
            // Every channel already hosts a PU (which forces su_count == 0),
            // so the arrival finds nothing to take and is lost.
            ++counters_.pu_lost;
            kind = EventKind::PuLost;
        } else if (here.pu_arrival_is_drop) {
            // Rebalancing cannot absorb the newcomer: one ongoing SU is
            // terminated. Which one is not tracked; the layout is rebuilt
            // from (pu, su) and all SUs are interchangeable.
            state_index_ = here.pu_arrival_target;
            ++counters_.su_dropped;
            kind = EventKind::PuDroppedSu;
        } else {
            state_index_ = here.pu_arrival_target;
            kind = EventKind::PuAdmitted;
        }
    } else if ((pick -= here.su_depart) < 0.0) {
        state_index_ = here.su_departure_target;
        ++counters_.su_departed;
        kind = EventKind::SuDeparted;
    } else if (here.pu_depart > 0.0) {
        state_index_ = here.pu_departure_target;
        ++counters_.pu_departed;
        kind = EventKind::PuDeparted;
    } else {
        // Rounding edge: uniform01() * total landed exactly on total with no
        // PU in service. Fall back to the SU arrival outcome.
        ++counters_.su_arrivals;
        if (here.su_arrival_target >= 0) {
            ++counters_.su_admitted;
            state_index_ = here.su_arrival_target;
            kind = EventKind::SuAdmitted;
        } else {
            ++counters_.su_blocked;
            kind = EventKind::SuBlocked;
        }
    }
    const StateTable& now_at = table_[state_index_];
    counters_.su_in_system_end = now_at.state.su_count;
    assert(state_index_ >= 0 && is_feasible(now_at.state, params_));

    if (track_map_) map_ = build_spectrum_map(now_at.state, params_);
    return SimEvent{now_, kind, now_at.state, now_at.bandwidth};
}

SimResult simulate(const SimConfig& cfg, std::ostream* trace) {
    if (auto v = cfg.violations(); !v.empty()) {
        std::string msg = "simulate: invalid config:";
        for (const auto& e : v) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }

    std::vector<ReplicationOutcome> outcomes(cfg.replications);
    int first_async = 0;
    if (trace != nullptr) {
        outcomes[0] = run_replication(cfg, cfg.seed, trace);
        first_async = 1;
    }

    const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (int base = first_async; base < cfg.replications; base += workers) {
        const int stop = std::min(cfg.replications, base + workers);
        std::vector<std::future<ReplicationOutcome>> batch;
        batch.reserve(stop - base);
        for (int r = base; r < stop; ++r)
            batch.push_back(std::async(std::launch::async, [&cfg, r] {
                return run_replication(cfg, cfg.seed + static_cast<std::uint64_t>(r), nullptr);
            }));
        for (int r = base; r < stop; ++r) outcomes[r] = batch[r - base].get();
    }

    SimResult result;
    result.replications = cfg.replications;
    const int n = cfg.replications;
    double sum[4] = {0, 0, 0, 0}, sumsq[4] = {0, 0, 0, 0};
    for (const auto& rep : outcomes) {
        result.counters += rep.window;
        result.dropping_defined = result.dropping_defined && rep.dropping_defined;
        const double v[4] = {rep.metrics.blocking_probability, rep.metrics.dropping_probability,
                             rep.metrics.utilization, rep.metrics.throughput};
        for (int k = 0; k < 4; ++k) {
            sum[k] += v[k];
            sumsq[k] += v[k] * v[k];
        }
    }
    double mean[4], half[4];
    for (int k = 0; k < 4; ++k) {
        mean[k] = sum[k] / n;
        if (n < 2) {
            half[k] = kNan;
        } else {
            const double var = std::max(0.0, (sumsq[k] - n * mean[k] * mean[k]) / (n - 1));
            half[k] = 1.96 * std::sqrt(var / n);
        }
    }
    result.metrics = Metrics{mean[0], mean[1], mean[2], mean[3]};
    result.half_width = Metrics{half[0], half[1], half[2], half[3]};
    return result;
}

}  // namespace cafsim
