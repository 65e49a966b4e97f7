#pragma once

#include "asv/model.hpp"
#include "asv/random.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace asv {

struct McmcConfig {
    std::int64_t n_iterations = 200000;
    std::int64_t burn_in = 50000;
    std::int64_t thin = 10;
    std::uint64_t seed = 0;
    double target_acceptance = 0.44;
    bool adapt_during_burn_in_only = true;
    /// When set, rho is held at this value and never updated (rho = 0 gives the standard SV model).
    std::optional<double> fixed_rho;
    /// Keep the thinned latent paths (n_stored x (T+1) doubles).
    bool store_latent = true;

    std::int64_t num_stored() const { return (n_iterations - burn_in) / thin; }

    /// Throws ConfigError on inconsistent settings. `min_stored` is the
    /// minimum number of kept draws the caller needs.
    void validate(std::int64_t min_stored = 1) const;
};

/// Random-walk proposal scales. `log_sigma2` is on the log scale; `h` holds one scale per h_1..h_T.
struct StepSizes {
    double phi = 0.05;
    double rho = 0.1;
    double log_sigma2 = 0.1;
    VectorXd h;

    bool operator==(const StepSizes&) const = default;
};

/// Post-burn-in Metropolis acceptance rates in [0, 1].
struct AcceptanceRates {
    double phi = 0.0;
    double rho = 0.0;
    double sigma2 = 0.0;
    VectorXd h;

    double h_mean() const { return h.size() > 0 ? h.mean() : 0.0; }
};

/// Thinned post-burn-in output of one chain.
struct ChainOutput {
    /// n_stored x (2k+3), columns beta_1..beta_k, gamma_1..gamma_k, phi, rho, sigma2.
    MatrixXd draws;
    /// n_stored x (T+1); empty when McmcConfig::store_latent is false.
    MatrixXd h_draws;
    std::vector<std::string> column_names;
    AcceptanceRates acceptance;
    StepSizes steps_after_burn_in;
    StepSizes final_steps;
    std::uint64_t seed_used = 0;

    Index num_covariates() const { return (draws.cols() - 3) / 2; }
    Index phi_column() const { return draws.cols() - 3; }
    Index rho_column() const { return draws.cols() - 2; }
    Index sigma2_column() const { return draws.cols() - 1; }
};

/// Starting point of a chain.
struct ChainStart {
    ParameterState state;
    LatentPath path;
};

/**
 * Default start: beta = gamma = 0, phi and rho at their prior means,
 * sigma2 = 5 * lambda0 / nu0, and every h_t at the log sample variance of the
 * demeaned returns.
 */
ChainStart default_start(const Dataset& data, const PriorConfig& prior);

/// Names of the draw columns for the given covariate labels.
std::vector<std::string> draw_column_names(const std::vector<std::string>& labels, Index k);

ChainOutput run_chain(const Dataset& data, const PriorConfig& prior, const McmcConfig& config);
ChainOutput run_chain(const Dataset& data, const PriorConfig& prior, const McmcConfig& config,
                      const ChainStart& start);

struct MhResult {
    double value;
    double log_density;
    bool accepted;
};

/**
 * One Gaussian random-walk Metropolis step on a scalar.
 *
 * `current_log_density` must equal log_density(current) and be finite.
 * Proposals with a -inf (or NaN) log density are rejected.
 */
template <typename LogDensity>
MhResult mh_scalar_step(double current, double current_log_density, LogDensity&& log_density, double step,
                        Rng& rng) {
    const double proposal = current + step * rng.normal();
    const double proposal_log_density = log_density(proposal);
    const double u = rng.uniform();
    if (!(proposal_log_density > -std::numeric_limits<double>::infinity())) {
        return {current, current_log_density, false};
    }
    const double log_ratio = proposal_log_density - current_log_density;
    if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
        return {proposal, proposal_log_density, true};
    }
    return {current, current_log_density, false};
}

template <typename LogDensity>
std::pair<double, bool> mh_scalar_step(double current, LogDensity&& log_density, double step, Rng& rng) {
    const double current_log_density = log_density(current);
    const MhResult r = mh_scalar_step(current, current_log_density, log_density, step, rng);
    return {r.value, r.accepted};
}

/// Robbins-Monro update of a proposal scale:
/// log(step) += (accepted - target) / iteration^0.6.
double adapt_step(double step, bool accepted, std::int64_t iteration, double target);

}  // namespace asv
