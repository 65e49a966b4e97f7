#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <string>
#include <vector>

namespace asv {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/**
 * Observed data for the asymmetric SV model.
 *
 * `returns` holds y_1..y_T. `design` has T+1 rows because the volatility
 * equation references the covariates one step ahead of the last return.
 * Column 0 of `design` is the constant.
 */
struct Dataset {
    VectorXd returns;
    MatrixXd design;
    std::vector<std::string> labels;

    Index num_obs() const { return returns.size(); }
    Index num_covariates() const { return design.cols(); }

    /// Throws DataError if any invariant is broken.
    void validate() const;
};

/// One draw of the non-latent parameter block.
struct ParameterState {
    VectorXd beta;   ///< return-equation coefficients
    VectorXd gamma;  ///< volatility-equation coefficients
    double phi = 0.0;
    double rho = 0.0;
    double sigma2 = 1.0;

    double sigma() const;

    /// Throws ConfigError unless |phi| < 1, |rho| < 1, sigma2 > 0 and sizes equal `k`.
    void validate(Index k) const;
};

/// Log volatilities h_1..h_{T+1}.
struct LatentPath {
    VectorXd h;

    void validate(Index rows) const;
};

/// Multivariate normal prior, held through its Cholesky factor.
class GaussianPrior {
public:
    GaussianPrior() = default;

    /// Throws ConfigError if `cov` is not symmetric positive-definite.
    GaussianPrior(VectorXd mean, const MatrixXd& cov);

    /// N(0, variance * I)
    static GaussianPrior isotropic(Index k, double variance);

    Index dim() const { return mean_.size(); }
    const VectorXd& mean() const { return mean_; }
    MatrixXd cov() const;
    const MatrixXd& precision() const { return precision_; }
    const VectorXd& precision_times_mean() const { return precision_mean_; }

    double log_density(const VectorXd& x) const;

private:
    VectorXd mean_;
    Eigen::LLT<MatrixXd> chol_;
    MatrixXd precision_;
    VectorXd precision_mean_;
    double log_norm_ = 0.0;
};

/**
 * Prior hyperparameters.
 *
 * (phi + 1)/2 ~ Beta(phi_a, phi_b), (rho + 1)/2 ~ Beta(rho_a, rho_b),
 * sigma2 ~ InvGamma(sigma_nu / 2, sigma_lambda / 2).
 */
class PriorConfig {
public:
    struct Shapes {
        double phi_a = 20.0;
        double phi_b = 1.5;
        double rho_a = 1.0;
        double rho_b = 1.0;
        double sigma_nu = 5.0;
        double sigma_lambda = 0.01;
    };

    PriorConfig(GaussianPrior beta, GaussianPrior gamma, Shapes shapes);

    /// Zero means, 100 * I covariances and the default shapes.
    static PriorConfig defaults(Index k);

    const GaussianPrior& beta() const { return beta_; }
    const GaussianPrior& gamma() const { return gamma_; }
    const Shapes& shapes() const { return shapes_; }

    double phi_a() const { return shapes_.phi_a; }
    double phi_b() const { return shapes_.phi_b; }
    double rho_a() const { return shapes_.rho_a; }
    double rho_b() const { return shapes_.rho_b; }
    double sigma_nu() const { return shapes_.sigma_nu; }
    double sigma_lambda() const { return shapes_.sigma_lambda; }

    // Normalised log prior densities; -inf outside the support.
    double log_prior_phi(double phi) const;
    double log_prior_rho(double rho) const;
    double log_prior_sigma2(double sigma2) const;

private:
    GaussianPrior beta_;
    GaussianPrior gamma_;
    Shapes shapes_;
    double phi_log_norm_ = 0.0;
    double rho_log_norm_ = 0.0;
    double sigma_log_norm_ = 0.0;
};

/// Log of a Beta(a, b) kernel on (1 + x)/2 without the normalising constant.
double log_scaled_beta_kernel(double x, double a, double b);

struct Moments {
    double mean;
    double sd;
};

/// Mean and standard deviation of phi = 2X - 1 with X ~ Beta(a, b).
Moments prior_moments_phi(double a, double b);
Moments prior_moments_phi(const PriorConfig& prior);

/// Individual summands of the joint log posterior.
struct LogPosteriorTerms {
    double prior_beta = 0.0;
    double prior_gamma = 0.0;
    double prior_phi = 0.0;
    double prior_rho = 0.0;
    double prior_sigma2 = 0.0;
    double initial = 0.0;      ///< log p(h_1)
    double observation = 0.0;  ///< sum_t log p(y_t | h_t)
    double transition = 0.0;   ///< sum_t log p(h_{t+1} | h_t, y_t)

    double priors() const { return prior_beta + prior_gamma + prior_phi + prior_rho + prior_sigma2; }
    double total() const { return priors() + initial + observation + transition; }

    /// Name of the first non-finite term, or an empty string if all are finite.
    std::string first_non_finite() const;
};

LogPosteriorTerms log_joint_terms(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior);

/// Unnormalised joint log posterior of (beta, gamma, phi, rho, sigma2, h).
/// Throws DensityError naming the diverging term when the result is not finite.
double log_joint_posterior(const ParameterState& state, const LatentPath& path,
                           const Dataset& data, const PriorConfig& prior);

}  // namespace asv
