#pragma once

#include "cafsim/ctmc.hpp"
#include "cafsim/model.hpp"

namespace cafsim {

/// The four steady-state performance figures of the secondary network.
struct Metrics {
    double blocking_probability = 0.0;  // new SU rejected, in [0, 1]
    double dropping_probability = 0.0;  // admitted SU forced out by a PU, in [0, 1]
    double utilization = 0.0;           // mean SU share of the band, in [0, 1]
    double throughput = 0.0;            // SU departures per unit time, <= lambda_s
};

/// Probability that an arriving SU finds too little spectrum even after
/// rebalancing: sum of pi over states where one more SU does not fit.
double blocking_probability(const SteadyState& pi, const StateSpace& space, const SystemParams& p);

/// Mean SU drop rate divided by the mean admitted-SU rate
/// (1 - P_b) * lambda_s. Throws std::domain_error when that denominator is 0.
double dropping_probability(const SteadyState& pi, const StateSpace& space, const SystemParams& p);

/// Mean bandwidth held by SUs as a fraction of the whole band.
double spectrum_utilization(const SteadyState& pi, const StateSpace& space, const SystemParams& p);

/// Mean SU departures per unit time. Departures bundle service completion and
/// cell exit: the per-SU rate is bandwidth * h_s + r_s, so both kinds count.
double su_throughput(const SteadyState& pi, const StateSpace& space, const SystemParams& p);

Metrics compute_metrics(const SteadyState& pi, const StateSpace& space, const SystemParams& p);

}  // namespace cafsim
