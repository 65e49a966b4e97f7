#pragma once

// Simulate-then-estimate replications used by the recovery checks.

#include "asv/diagnostics.hpp"
#include "asv/model.hpp"
#include "asv/sampler.hpp"

#include <cstdint>
#include <vector>

namespace asv::testing {

struct RecoverySetup {
    ParameterState truth;
    Index T = 2000;
    double dummy_probability = 0.3;
    McmcConfig mcmc;
};

struct RecoveryResult {
    /// One entry per draw column: beta_1..beta_k, gamma_1..gamma_k, phi, rho, sigma2.
    std::vector<ParamSummary> summaries;
    std::vector<double> truth;
    std::vector<bool> covered;

    int num_covered() const;
};

/// Simulates one dataset with `seed`, then runs a chain seeded with `seed + 1`.
RecoveryResult run_recovery(const RecoverySetup& setup, std::uint64_t seed);

}  // namespace asv::testing
