#include "cafsim/metrics.hpp"

#include <stdexcept>

namespace cafsim {
namespace {

void check_consistency(const SteadyState& pi, const StateSpace& space, const char* op) {
    if (pi.probabilities.size() != space.size())
        throw std::invalid_argument(std::string(op) + ": pi/state-space size mismatch");
}

}  // namespace

double blocking_probability(const SteadyState& pi, const StateSpace& space,
                            const SystemParams& p) {
    check_consistency(pi, space, "blocking_probability");
    double blocked_rate = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k)
        blocked_rate += blocking_rate(space[k], p) * pi.probabilities[k];
    return blocked_rate / p.su_arrival_rate;
}

double dropping_probability(const SteadyState& pi, const StateSpace& space,
                            const SystemParams& p) {
    check_consistency(pi, space, "dropping_probability");
    double drop_rate = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) {
        const SystemState& s = space[k];
        const SystemState drop_target{s.pu_count + 1, s.su_count - 1};
        drop_rate += transition_rate(s, drop_target, p) * pi.probabilities[k];
    }
    const double admitted_rate = (1.0 - blocking_probability(pi, space, p)) * p.su_arrival_rate;
    if (admitted_rate <= 0.0)
        throw std::domain_error("dropping_probability: no SU is ever admitted");
    return drop_rate / admitted_rate;
}

double spectrum_utilization(const SteadyState& pi, const StateSpace& space,
                            const SystemParams& p) {
    check_consistency(pi, space, "spectrum_utilization");
    double occupancy = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k)
        occupancy += space[k].su_count * bandwidth(space[k], p) * pi.probabilities[k];
    return occupancy / p.channels;
}

double su_throughput(const SteadyState& pi, const StateSpace& space, const SystemParams& p) {
    check_consistency(pi, space, "su_throughput");
    double rate = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k)
        rate += space[k].su_count * su_service_rate(space[k], p) * pi.probabilities[k];
    return rate;
}

Metrics compute_metrics(const SteadyState& pi, const StateSpace& space, const SystemParams& p) {
    return Metrics{
        .blocking_probability = blocking_probability(pi, space, p),
        .dropping_probability = dropping_probability(pi, space, p),
        .utilization = spectrum_utilization(pi, space, p),
        .throughput = su_throughput(pi, space, p),
    };
}

}  // namespace cafsim
