#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace cafsim {

/// Model constants for one spectrum-sharing scenario.
///
/// The band consists of `channels` unit-bandwidth channels shared by licensed
/// primary users (PUs, one whole channel each) and secondary users (SUs).
/// Every SU accepts any bandwidth in [min_bandwidth, max_bandwidth]
/// channel-widths; ongoing SUs are rebalanced to one common per-SU share by
/// equal sharing, so a channel can be fragmented between SUs when load is
/// high and aggregated into multi-channel bonds when it is low.
struct SystemParams {
    int channels = 0;                // N, number of unit-bandwidth channels
    double min_bandwidth = 1.0;      // B_m, least share an SU accepts, >= 1
    double max_bandwidth = 1.0;      // B_M, largest share an SU can use
    double pu_arrival_rate = 0.0;    // lambda_p, may be 0 (pure-SU scenario)
    double su_arrival_rate = 0.0;    // lambda_s
    double pu_service_rate = 0.0;    // mu_p, per occupied channel
    double su_holding_rate = 0.0;    // h_s, per unit of occupied bandwidth
    double su_residence_rate = 0.0;  // r_s, independent of bandwidth

    /// Field-labelled invariant violations; empty when the params are usable.
    std::vector<std::string> violations() const;
    bool valid() const { return violations().empty(); }

    /// Largest SU population the band can hold: floor(channels / min_bandwidth).
    int max_su_count() const;
};

/// A point of the Markov chain: how many PUs and SUs are in the system.
struct SystemState {
    int pu_count = 0;
    int su_count = 0;

    friend constexpr bool operator==(const SystemState&, const SystemState&) = default;
    friend constexpr auto operator<=>(const SystemState&, const SystemState&) = default;
};

/// True iff the state fits in the band: pu_count <= N, su_count <= floor(N/B_m)
/// and pu_count + su_count * B_m <= N. Total over all integer pairs; negative
/// counts are infeasible.
bool is_feasible(const SystemState& s, const SystemParams& p);

/// Room for one more SU: pu_count + (su_count + 1) * B_m <= N. Its negation is
/// the SU blocking condition.
bool admits_su(const SystemState& s, const SystemParams& p);

/// True when a PU arrival in `s` cannot be absorbed by rebalancing alone
/// (pu_count + 1 + su_count * B_m > N) and must cost one SU its service.
bool pu_arrival_drops(const SystemState& s, const SystemParams& p);

/// The enumerated feasible states, lexicographically ordered by
/// (pu_count, su_count), with a constant-time inverse index.
class StateSpace {
  public:
    StateSpace() = default;

    const std::vector<SystemState>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    const SystemState& operator[](std::size_t k) const { return states_[k]; }

    /// Position of `s` in states(), or -1 when `s` is not feasible.
    int index_of(const SystemState& s) const;

    int channels() const { return channels_; }
    int max_su() const { return max_su_; }

  private:
    friend StateSpace enumerate_states(const SystemParams&);

    std::vector<SystemState> states_;
    std::vector<int> index_;  // dense (channels+1) x (max_su+1) grid, -1 = infeasible
    int channels_ = 0;
    int max_su_ = 0;
};

/// Builds the feasible state space for `p`. Throws std::invalid_argument when
/// the params violate their invariants.
StateSpace enumerate_states(const SystemParams& p);

/// Per-SU bandwidth under equal sharing:
/// min{B_M, max{B_m, (N - pu_count) / su_count}} when su_count >= 1, else 0.
/// Throws std::invalid_argument for infeasible states.
double bandwidth(const SystemState& s, const SystemParams& p);

/// Per-SU departure rate: bandwidth(s) * h_s + r_s when su_count >= 1, else 0.
/// The aggregate SU departure rate in `s` is su_count * su_service_rate(s).
/// Throws std::invalid_argument for infeasible states.
double su_service_rate(const SystemState& s, const SystemParams& p);

/// Rate of the chain's jump from `from` to `to`; 0 for pairs that are not a
/// single arrival/departure event or whose target is infeasible. A PU arrival
/// that exceeds the band maps to the drop jump (pu_count+1, su_count-1); the
/// SU blocking self-rate is deliberately NOT part of this function (a
/// self-transition does not move the chain) and lives in blocking_rate().
/// Throws std::invalid_argument when `from` is infeasible.
double transition_rate(const SystemState& from, const SystemState& to, const SystemParams& p);

/// lambda_s when an SU arriving in `s` would be blocked, else 0. Bookkeeping
/// for the blocking probability, kept out of the generator matrix.
double blocking_rate(const SystemState& s, const SystemParams& p);

}  // namespace cafsim
