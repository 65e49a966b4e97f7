#pragma once

#include <span>
#include <string>
#include <vector>

namespace asv {

/// Posterior summary of one parameter, in the layout of the estimation tables.
struct ParamSummary {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double ci_low = 0.0;   ///< 2.5% quantile
    double ci_high = 0.0;  ///< 97.5% quantile
    double cd = 1.0;       ///< Geweke p-value
    double if_ = 1.0;      ///< inefficiency factor; NaN for zero-variance draws

    bool excludes_zero() const { return ci_low > 0.0 || ci_high < 0.0; }
    /// CD below 0.01 signals a chain that has not converged.
    bool converged() const { return cd >= kConvergenceThreshold; }

    static constexpr double kConvergenceThreshold = 0.01;
};

/// Minimum chain length accepted by the diagnostics.
inline constexpr std::size_t kMinDiagnosticLength = 100;

/// Parzen lag window on [0, 1]; zero beyond.
double parzen_weight(double u);

/// Spectral density at frequency zero, Parzen-windowed with bandwidth 4 * floor(n^(1/3)).
double spectral_density_at_zero(std::span<const double> draws);

/**
 * Geweke convergence diagnostic.
 *
 * Compares the means of the first 20% and last 50% of the draws and returns the
 * two-sided p-value of the standard-normal statistic. Segments with zero
 * spectral variance give 1.0 if their means agree and 0.0 otherwise.
 */
double geweke_cd(std::span<const double> draws);

/// Sample autocorrelations rho_1..rho_max_lag (denominator n).
std::vector<double> autocorrelations(std::span<const double> draws, std::size_t max_lag);

/**
 * Inefficiency factor 1 + 2 sum_{s=1}^{L} w(s) rho_s.
 *
 * L is the first lag with |rho_s| < 2/sqrt(n), capped at 1000; w is a Parzen
 * window of bandwidth 2L. The result is floored at kMinInefficiency.
 * Throws std::invalid_argument for zero-variance input.
 */
double inefficiency_factor(std::span<const double> draws);
inline constexpr double kMinInefficiency = 1e-6;

/// Linear-interpolation sample quantile (p in [0, 1]) of already sorted values.
double sorted_quantile(std::span<const double> sorted, double p);

ParamSummary summarize(std::span<const double> draws, std::string name);

}  // namespace asv
