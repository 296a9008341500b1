#pragma once

#include <cstdint>
#include <vector>

#include "cafsim/model.hpp"

namespace cafsim {

/// Infinitesimal generator over a StateSpace. Row = source state index,
/// column = destination; the diagonal closes each row to zero. SU blocking
/// self-rates are vacuous as chain transitions, so they are kept in the
/// parallel `blocking_rates` vector instead of the matrix.
struct Generator {
    int dim = 0;
    std::vector<double> rates;           // row-major dim x dim
    std::vector<double> blocking_rates;  // per-state SU blocking rate (lambda_s or 0)

    double at(int row, int col) const { return rates[static_cast<std::size_t>(row) * dim + col]; }
    double& at(int row, int col) { return rates[static_cast<std::size_t>(row) * dim + col]; }
};

Generator build_generator(const StateSpace& space, const SystemParams& p);

/// Stationary distribution in StateSpace order.
struct SteadyState {
    std::vector<double> probabilities;
    double residual = 0.0;  // max-abs entry of pi * Q at the returned pi
};

/// Solves {pi Q = 0, sum(pi) = 1} as one stacked least-squares system via
/// orthogonal factorization. Round-off negatives are clamped to zero and the
/// vector renormalized; a clamp larger than 1e-10 or a residual above
/// `tolerance` raises std::runtime_error (malformed generator or a chain
/// without a unique stationary distribution).
SteadyState solve_steady_state(const Generator& g, double tolerance = 1e-9);

/// Max-abs entry of pi * Q.
double verify_balance(const std::vector<double>& pi, const Generator& g);

/// Independent solution route used to cross-check solve_steady_state: embed
/// the chain at uniform rate (just above the largest exit rate), then power
/// iterate pi <- pi P on the resulting stochastic matrix until successive
/// iterates differ by less than `step_tolerance`. Deliberately avoids the
/// least-squares path (plain loops, no factorization).
std::vector<double> uniformization_steady_state(const Generator& g,
                                                double step_tolerance = 1e-13,
                                                std::int64_t max_iterations = 2'000'000);

}  // namespace cafsim
