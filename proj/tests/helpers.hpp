#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "cafsim/model.hpp"

namespace cafsim::test {

inline SystemParams make_params(int channels, double b_min, double b_max, double lambda_p = 1.0,
                                double lambda_s = 7.2, double mu_p = 0.45, double h_s = 1.0,
                                double r_s = 1.0) {
    SystemParams p;
    p.channels = channels;
    p.min_bandwidth = b_min;
    p.max_bandwidth = b_max;
    p.pu_arrival_rate = lambda_p;
    p.su_arrival_rate = lambda_s;
    p.pu_service_rate = mu_p;
    p.su_holding_rate = h_s;
    p.su_residence_rate = r_s;
    return p;
}

/// The reference 12-channel configuration most tests sweep around.
inline SystemParams reference_params(double b_min, double b_max, double lambda_p) {
    return make_params(12, b_min, b_max, lambda_p);
}

inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Valid params with small channel counts and quarter-step fractional
/// bandwidth bounds, occasionally with lambda_p = 0.
inline SystemParams random_params(std::mt19937_64& rng) {
    SystemParams p;
    p.channels = 1 + static_cast<int>(u01(rng) * 12.0);
    const double n = p.channels;
    p.min_bandwidth = std::min(n, 1.0 + std::floor(u01(rng) * 4.0 * (n - 1.0) + 0.5) / 4.0);
    p.max_bandwidth =
        std::min(n, p.min_bandwidth + std::floor(u01(rng) * 4.0 * (n - p.min_bandwidth)) / 4.0);
    p.pu_arrival_rate = u01(rng) < 0.2 ? 0.0 : 5.0 * u01(rng);
    p.su_arrival_rate = 0.3 + 9.0 * u01(rng);
    p.pu_service_rate = 0.1 + 2.0 * u01(rng);
    p.su_holding_rate = 0.2 + 3.0 * u01(rng);
    p.su_residence_rate = 0.2 + 3.0 * u01(rng);
    return p;
}

}  // namespace cafsim::test
