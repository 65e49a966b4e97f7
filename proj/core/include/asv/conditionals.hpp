#pragma once

#include "asv/model.hpp"
#include "asv/random.hpp"

#include <Eigen/Cholesky>

namespace asv {

/// Mean and covariance of a Gaussian full conditional.
struct GaussianMoments {
    VectorXd mean;
    MatrixXd cov;
};

/**
 * Gaussian full conditional in canonical form: log density is
 * -x'Px/2 + x'b + const. The Cholesky factor of P is computed once and reused
 * for both the mean and a draw.
 */
class PrecisionForm {
public:
    PrecisionForm(MatrixXd precision, VectorXd linear);

    const MatrixXd& precision() const { return precision_; }
    const VectorXd& linear() const { return linear_; }

    VectorXd mean() const;
    GaussianMoments moments() const;
    VectorXd draw(Rng& rng) const;

private:
    MatrixXd precision_;
    VectorXd linear_;
    Eigen::LLT<MatrixXd> chol_;
};

PrecisionForm beta_precision_form(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior);
PrecisionForm gamma_precision_form(const ParameterState& state, const LatentPath& path,
                                   const Dataset& data, const PriorConfig& prior);

/// beta | gamma, phi, rho, sigma2, h, y ~ N(mean, cov)
GaussianMoments beta_conditional(const ParameterState& state, const LatentPath& path,
                                 const Dataset& data, const PriorConfig& prior);

/// gamma | beta, phi, rho, sigma2, h, y ~ N(mean, cov)
GaussianMoments gamma_conditional(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior);

/**
 * Joint full conditional of (phi, rho, sigma2) with the regression
 * coefficients and path held fixed. Precomputes the centred volatility
 * terms once so each evaluation is a single pass without exponentials.
 */
class PhiRhoSigmaTarget {
public:
    PhiRhoSigmaTarget(const ParameterState& rest, const LatentPath& path, const Dataset& data,
                      const PriorConfig& prior);

    /// Log density up to a constant; -inf outside |phi| < 1, |rho| < 1, sigma2 > 0.
    double operator()(double phi, double rho, double sigma2) const;

private:
    const PriorConfig* prior_;
    VectorXd next_;     // h_{t+1} - x_{t+1}'gamma
    VectorXd current_;  // h_t - x_t'gamma
    VectorXd shock_;    // exp(-h_t/2) (y_t - x_t'beta)
    double initial_dev_ = 0.0;
};

double log_fcd_phi_rho_sigma(double phi, double rho, double sigma2, const ParameterState& rest,
                             const LatentPath& path, const Dataset& data, const PriorConfig& prior);

/**
 * Everything the full conditional of one interior/initial log volatility
 * depends on, gathered from its neighbours. Index `t` is zero-based and must
 * satisfy 0 <= t < T; the final state h_{T+1} has a Gaussian conditional
 * (see h_last_conditional).
 */
class LatentSite {
public:
    LatentSite(Index t, const VectorXd& h, const ParameterState& state, const VectorXd& returns,
               const VectorXd& xb, const VectorXd& xg);

    double log_density(double value) const;

private:
    double resid_;        // y_t - x_t'beta
    double next_dev_;     // h_{t+1} - x_{t+1}'gamma
    double level_;        // x_t'gamma
    double phi_;
    double rho_sigma_;
    double inv_trans_var_;
    bool first_;
    double back_mean_ = 0.0;     // mean of h_t | h_{t-1}, y_{t-1}
    double initial_prec_ = 0.0;  // (1 - phi^2) / sigma2
};

double log_fcd_h(Index t, const LatentPath& path, const ParameterState& state, const Dataset& data);

/// log_fcd_h with h_t replaced by `value`.
double log_fcd_h_at(Index t, double value, const LatentPath& path, const ParameterState& state,
                    const Dataset& data);

struct NormalMoments {
    double mean;
    double var;
};

/// h_{T+1} | rest ~ N(mean, sigma2 (1 - rho^2))
NormalMoments h_last_conditional(const LatentPath& path, const ParameterState& state, const Dataset& data);

}  // namespace asv
