#pragma once

#include "asv/model.hpp"

#include <cstdint>

namespace asv {

struct SimSpec {
    ParameterState truth;
    MatrixXd design;  ///< (T+1) x k, column 0 constant
    std::uint64_t seed = 0;
};

struct SimulatedData {
    VectorXd returns;  ///< y_1..y_T
    LatentPath path;   ///< h_1..h_{T+1}
};

/**
 * Draws (y, h) from the asymmetric SV process.
 *
 * h_1 comes from its stationary law N(x_1'gamma, sigma2 / (1 - phi^2)). Each
 * step draws eps ~ N(0, 1) and then eta | eps ~ N(rho sigma eps, sigma2 (1 - rho^2)).
 */
SimulatedData simulate(const SimSpec& spec);

/// Wraps a simulation into a Dataset with the given design and labels.
Dataset to_dataset(const SimulatedData& sim, const MatrixXd& design, std::vector<std::string> labels = {});

/// (T+1) x k design: a constant column then k-1 independent Bernoulli(p) dummies.
MatrixXd random_dummy_design(Index T, Index k, double p, std::uint64_t seed);

}  // namespace asv
