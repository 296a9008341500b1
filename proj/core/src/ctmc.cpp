#include "cafsim/ctmc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cafsim {

Generator build_generator(const StateSpace& space, const SystemParams& p) {
    const int n = static_cast<int>(space.size());
    Generator g;
    g.dim = n;
    g.rates.assign(static_cast<std::size_t>(n) * n, 0.0);
    g.blocking_rates.assign(n, 0.0);

    for (int row = 0; row < n; ++row) {
        const SystemState& s = space[row];
        const SystemState targets[] = {
            {s.pu_count, s.su_count - 1},      // SU departure
            {s.pu_count, s.su_count + 1},      // SU admission
            {s.pu_count - 1, s.su_count},      // PU departure
            {s.pu_count + 1, s.su_count},      // PU arrival, absorbed
            {s.pu_count + 1, s.su_count - 1},  // PU arrival, one SU dropped
        };
        double exit_rate = 0.0;
        for (const SystemState& t : targets) {
            const int col = space.index_of(t);
            if (col < 0) continue;
            const double rate = transition_rate(s, t, p);
            if (rate == 0.0) continue;
            g.at(row, col) += rate;
            exit_rate += rate;
        }
        g.at(row, row) = -exit_rate;
        g.blocking_rates[row] = blocking_rate(s, p);
    }
    return g;
}

SteadyState solve_steady_state(const Generator& g, double tolerance) {
    const int n = g.dim;
    if (n == 0) throw std::runtime_error("solve_steady_state: empty generator");

    // pi Q = 0 transposed to Q^T pi^T = 0, stacked with the normalization row.
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> q(
        g.rates.data(), n, n);
    Eigen::MatrixXd a(n + 1, n);
    a.topRows(n) = q.transpose();
    a.row(n).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b(n) = 1.0;

    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);

    SteadyState result;
    result.probabilities.assign(x.data(), x.data() + n);
    double worst_clamp = 0.0;
    double sum = 0.0;
    for (double& pi : result.probabilities) {
        if (pi < 0.0) {
            worst_clamp = std::max(worst_clamp, -pi);
            pi = 0.0;
        }
        sum += pi;
    }
    if (worst_clamp > 1e-10) {
        std::ostringstream msg;
        msg << "solve_steady_state: negative probability mass " << worst_clamp
            << " exceeds the 1e-10 round-off clamp";
        throw std::runtime_error(msg.str());
    }
    if (sum <= 0.0) throw std::runtime_error("solve_steady_state: zero probability mass");
    for (double& pi : result.probabilities) pi /= sum;

    result.residual = verify_balance(result.probabilities, g);
    if (!(result.residual <= tolerance)) {
        std::ostringstream msg;
        msg << "solve_steady_state: balance residual " << result.residual << " exceeds tolerance "
            << tolerance;
        throw std::runtime_error(msg.str());
    }
    return result;
}

double verify_balance(const std::vector<double>& pi, const Generator& g) {
    const int n = g.dim;
    if (static_cast<int>(pi.size()) != n)
        throw std::invalid_argument("verify_balance: dimension mismatch");
    std::vector<double> flow(n, 0.0);
    for (int row = 0; row < n; ++row) {
        const double mass = pi[row];
        if (mass == 0.0) continue;
        const double* q_row = g.rates.data() + static_cast<std::size_t>(row) * n;
        for (int col = 0; col < n; ++col) flow[col] += mass * q_row[col];
    }
    double worst = 0.0;
    for (double f : flow) worst = std::max(worst, std::abs(f));
    return worst;
}

std::vector<double> uniformization_steady_state(const Generator& g, double step_tolerance,
                                                std::int64_t max_iterations) {
    const int n = g.dim;
    if (n == 0) throw std::runtime_error("uniformization_steady_state: empty generator");
    if (n == 1) return {1.0};

    double max_exit = 0.0;
    for (int i = 0; i < n; ++i) max_exit = std::max(max_exit, -g.at(i, i));
    if (max_exit == 0.0) return std::vector<double>(n, 1.0 / n);

    // P = I + Q / rate, with rate strictly above the largest exit rate so every
    // state keeps a self-loop and the embedded chain is aperiodic. Keeping the
    // margin small keeps the iteration's spectral gap close to the chain's.
    const double rate = 1.0001 * max_exit;
    std::vector<double> p(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            p[static_cast<std::size_t>(row) * n + col] =
                (row == col ? 1.0 : 0.0) + g.at(row, col) / rate;

    std::vector<double> pi(n, 1.0 / n);
    std::vector<double> next(n);
    for (std::int64_t iter = 0; iter < max_iterations; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int row = 0; row < n; ++row) {
            const double mass = pi[row];
            if (mass == 0.0) continue;
            const double* p_row = p.data() + static_cast<std::size_t>(row) * n;
            for (int col = 0; col < n; ++col) next[col] += mass * p_row[col];
        }
        double sum = 0.0;
        for (double v : next) sum += v;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] /= sum;
            delta = std::max(delta, std::abs(next[i] - pi[i]));
        }
        pi.swap(next);
        if (delta < step_tolerance) return pi;
    }
    throw std::runtime_error("uniformization_steady_state: power iteration did not converge");
}

}  // namespace cafsim
