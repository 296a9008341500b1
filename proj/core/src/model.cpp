#include "cafsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cafsim {
namespace {

// Feasibility arithmetic mixes integers with B_m/B_M, which may not be exactly
// representable. All capacity comparisons and floors carry a small slack so
// boundary states (e.g. (N - pu) / B_m integral) classify consistently.
constexpr double kSlack = 1e-12;

bool fits(double demand, double capacity) {
    return demand <= capacity + kSlack * std::max(1.0, std::abs(capacity));
}

int guarded_floor(double x) {
    return static_cast<int>(std::floor(x + kSlack * std::max(1.0, std::abs(x))));
}

[[noreturn]] void throw_infeasible(const char* op, const SystemState& s) {
    std::ostringstream msg;
    msg << op << ": infeasible state (pu=" << s.pu_count << ", su=" << s.su_count << ")";
    throw std::invalid_argument(msg.str());
}

}  // namespace

std::vector<std::string> SystemParams::violations() const {
    std::vector<std::string> v;
    if (channels < 1) v.push_back("channels: must be a positive integer");
    if (!(min_bandwidth >= 1.0)) v.push_back("min_bandwidth: must be >= 1");
    if (!(max_bandwidth >= min_bandwidth)) v.push_back("max_bandwidth: must be >= min_bandwidth");
    if (channels >= 1 && !fits(max_bandwidth, channels))
        v.push_back("max_bandwidth: must be <= channels");
    if (!(pu_arrival_rate >= 0.0)) v.push_back("pu_arrival_rate: must be >= 0");
    if (!(su_arrival_rate > 0.0)) v.push_back("su_arrival_rate: must be > 0");
    if (!(pu_service_rate > 0.0)) v.push_back("pu_service_rate: must be > 0");
    if (!(su_holding_rate > 0.0)) v.push_back("su_holding_rate: must be > 0");
    if (!(su_residence_rate > 0.0)) v.push_back("su_residence_rate: must be > 0");
    for (double r : {pu_arrival_rate, su_arrival_rate, pu_service_rate, su_holding_rate,
                     su_residence_rate, min_bandwidth, max_bandwidth})
        if (!std::isfinite(r)) {
            v.push_back("rates and bandwidths must be finite");
            break;
        }
    return v;
}

int SystemParams::max_su_count() const {
    return guarded_floor(static_cast<double>(channels) / min_bandwidth);
}

bool is_feasible(const SystemState& s, const SystemParams& p) {
    if (s.pu_count < 0 || s.su_count < 0) return false;
    if (s.pu_count > p.channels) return false;
    if (s.su_count > p.max_su_count()) return false;
    return fits(s.pu_count + s.su_count * p.min_bandwidth, p.channels);
}

bool admits_su(const SystemState& s, const SystemParams& p) {
    return fits(s.pu_count + (s.su_count + 1) * p.min_bandwidth, p.channels);
}

bool pu_arrival_drops(const SystemState& s, const SystemParams& p) {
    return !fits(s.pu_count + 1 + s.su_count * p.min_bandwidth, p.channels);
}

int StateSpace::index_of(const SystemState& s) const {
    if (s.pu_count < 0 || s.pu_count > channels_ || s.su_count < 0 || s.su_count > max_su_)
        return -1;
    return index_[static_cast<std::size_t>(s.pu_count) * (max_su_ + 1) + s.su_count];
}

StateSpace enumerate_states(const SystemParams& p) {
    if (auto v = p.violations(); !v.empty()) {
        std::string msg = "enumerate_states: invalid params:";
        for (const auto& e : v) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
    StateSpace space;
    space.channels_ = p.channels;
    space.max_su_ = p.max_su_count();
    space.index_.assign(static_cast<std::size_t>(p.channels + 1) * (space.max_su_ + 1), -1);
    for (int pu = 0; pu <= p.channels; ++pu) {
        for (int su = 0; su <= space.max_su_; ++su) {
            SystemState s{pu, su};
            if (!is_feasible(s, p)) continue;
            space.index_[static_cast<std::size_t>(pu) * (space.max_su_ + 1) + su] =
                static_cast<int>(space.states_.size());
            space.states_.push_back(s);
        }
    }
    return space;
}

double bandwidth(const SystemState& s, const SystemParams& p) {
    if (!is_feasible(s, p)) throw_infeasible("bandwidth", s);
    if (s.su_count == 0) return 0.0;
    const double share = static_cast<double>(p.channels - s.pu_count) / s.su_count;
    return std::min(p.max_bandwidth, std::max(p.min_bandwidth, share));
}

double su_service_rate(const SystemState& s, const SystemParams& p) {
    if (!is_feasible(s, p)) throw_infeasible("su_service_rate", s);
    if (s.su_count == 0) return 0.0;
    return bandwidth(s, p) * p.su_holding_rate + p.su_residence_rate;
}

double transition_rate(const SystemState& from, const SystemState& to, const SystemParams& p) {
    if (!is_feasible(from, p)) throw_infeasible("transition_rate", from);
    if (!is_feasible(to, p)) return 0.0;
    const int dpu = to.pu_count - from.pu_count;
    const int dsu = to.su_count - from.su_count;
    if (dpu == 0 && dsu == -1) return from.su_count * su_service_rate(from, p);
    if (dpu == 0 && dsu == +1) return admits_su(from, p) ? p.su_arrival_rate : 0.0;
    if (dpu == -1 && dsu == 0) return from.pu_count * p.pu_service_rate;
    if (dpu == +1 && dsu == 0) return pu_arrival_drops(from, p) ? 0.0 : p.pu_arrival_rate;
    if (dpu == +1 && dsu == -1) return pu_arrival_drops(from, p) ? p.pu_arrival_rate : 0.0;
    return 0.0;
}

double blocking_rate(const SystemState& s, const SystemParams& p) {
    return admits_su(s, p) ? 0.0 : p.su_arrival_rate;
}

}  // namespace cafsim
