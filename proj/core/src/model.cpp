#include "asv/model.hpp"

#include "asv/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace asv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_beta_fn(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double log_normal(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

}  // namespace

void Dataset::validate() const {
    const Index T = returns.size();
    if (T < 3) {
        throw DataError("dataset needs at least 3 returns, got " + std::to_string(T));
    }
    if (design.rows() != T + 1) {
        std::ostringstream os;
        os << "design matrix must have T+1 = " << T + 1 << " rows, got " << design.rows();
        throw DataError(os.str());
    }
    if (design.cols() < 1) {
        throw DataError("design matrix has no columns");
    }
    if (!labels.empty() && static_cast<Index>(labels.size()) != design.cols()) {
        throw DataError("label count does not match design columns");
    }
    if (!returns.allFinite() || !design.allFinite()) {
        throw DataError("returns and design entries must be finite");
    }
    for (Index t = 0; t < design.rows(); ++t) {
        if (design(t, 0) != 1.0) {
            throw DataError("design column 0 must be the constant 1 (row " + std::to_string(t) + ")");
        }
    }
}

double ParameterState::sigma() const { return std::sqrt(sigma2); }

void ParameterState::validate(Index k) const {
    if (beta.size() != k || gamma.size() != k) {
        throw ConfigError("beta and gamma must have length " + std::to_string(k));
    }
    if (!(std::abs(phi) < 1.0)) throw ConfigError("phi must lie in (-1, 1)");
    if (!(std::abs(rho) < 1.0)) throw ConfigError("rho must lie in (-1, 1)");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be positive");
    if (!beta.allFinite() || !gamma.allFinite()) throw ConfigError("beta and gamma must be finite");
}

void LatentPath::validate(Index rows) const {
    if (h.size() != rows) {
        throw ConfigError("latent path must have " + std::to_string(rows) + " entries");
    }
    if (!h.allFinite()) throw ConfigError("latent path contains non-finite values");
}

GaussianPrior::GaussianPrior(VectorXd mean, const MatrixXd& cov) : mean_(std::move(mean)) {
    const Index k = mean_.size();
    if (k < 1 || cov.rows() != k || cov.cols() != k) {
        throw ConfigError("prior covariance must be " + std::to_string(k) + "x" + std::to_string(k));
    }
    if (!cov.allFinite() || !mean_.allFinite()) {
        throw ConfigError("prior mean and covariance must be finite");
    }
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ConfigError("prior covariance is not symmetric");
    }
    chol_.compute(cov);
    if (chol_.info() != Eigen::Success) {
        throw ConfigError("prior covariance is not positive-definite");
    }
    const MatrixXd L = chol_.matrixL();
    if ((L.diagonal().array() <= 0.0).any()) {
        throw ConfigError("prior covariance is not positive-definite");
    }
    precision_ = chol_.solve(MatrixXd::Identity(k, k));
    precision_ = 0.5 * (precision_ + precision_.transpose());
    precision_mean_ = chol_.solve(mean_);
    const double log_det = 2.0 * L.diagonal().array().log().sum();
    log_norm_ = -0.5 * (static_cast<double>(k) * kLog2Pi + log_det);
}

GaussianPrior GaussianPrior::isotropic(Index k, double variance) {
    return GaussianPrior(VectorXd::Zero(k), variance * MatrixXd::Identity(k, k));
}

MatrixXd GaussianPrior::cov() const { return chol_.reconstructedMatrix(); }

double GaussianPrior::log_density(const VectorXd& x) const {
    const VectorXd z = chol_.matrixL().solve(x - mean_);
    return log_norm_ - 0.5 * z.squaredNorm();
}

PriorConfig::PriorConfig(GaussianPrior beta, GaussianPrior gamma, Shapes shapes)
    : beta_(std::move(beta)), gamma_(std::move(gamma)), shapes_(shapes) {
    if (beta_.dim() != gamma_.dim()) {
        throw ConfigError("beta and gamma priors must have the same dimension");
    }
    const double values[] = {shapes_.phi_a, shapes_.phi_b, shapes_.rho_a,
                             shapes_.rho_b, shapes_.sigma_nu, shapes_.sigma_lambda};
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("prior shape and scale parameters must be positive");
        }
    }
    // The density of x = 2u - 1 carries a 1/2 Jacobian.
    phi_log_norm_ = -log_beta_fn(shapes_.phi_a, shapes_.phi_b) - std::numbers::ln2;
    rho_log_norm_ = -log_beta_fn(shapes_.rho_a, shapes_.rho_b) - std::numbers::ln2;
    const double shape = 0.5 * shapes_.sigma_nu;
    sigma_log_norm_ = shape * std::log(0.5 * shapes_.sigma_lambda) - std::lgamma(shape);
}

PriorConfig PriorConfig::defaults(Index k) {
    return PriorConfig(GaussianPrior::isotropic(k, 100.0), GaussianPrior::isotropic(k, 100.0), Shapes{});
}

double log_scaled_beta_kernel(double x, double a, double b) {
    if (!(std::abs(x) < 1.0)) return -kInf;
    return (a - 1.0) * (std::log1p(x) - std::numbers::ln2) +
           (b - 1.0) * (std::log1p(-x) - std::numbers::ln2);
}

double PriorConfig::log_prior_phi(double phi) const {
    return phi_log_norm_ + log_scaled_beta_kernel(phi, shapes_.phi_a, shapes_.phi_b);
}

double PriorConfig::log_prior_rho(double rho) const {
    return rho_log_norm_ + log_scaled_beta_kernel(rho, shapes_.rho_a, shapes_.rho_b);
}

double PriorConfig::log_prior_sigma2(double sigma2) const {
    if (!(sigma2 > 0.0)) return -kInf;
    return sigma_log_norm_ - (0.5 * shapes_.sigma_nu + 1.0) * std::log(sigma2) -
           0.5 * shapes_.sigma_lambda / sigma2;
}

Moments prior_moments_phi(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("Beta shapes must be positive");
    const double s = a + b;
    const double mean = 2.0 * a / s - 1.0;
    const double sd = 2.0 * std::sqrt(a * b / (s * s * (s + 1.0)));
    return {mean, sd};
}

Moments prior_moments_phi(const PriorConfig& prior) { return prior_moments_phi(prior.phi_a(), prior.phi_b()); }

std::string LogPosteriorTerms::first_non_finite() const {
    const std::pair<const char*, double> named[] = {
        {"prior_beta", prior_beta}, {"prior_gamma", prior_gamma},   {"prior_phi", prior_phi},
        {"prior_rho", prior_rho},   {"prior_sigma2", prior_sigma2}, {"initial", initial},
        {"observation", observation}, {"transition", transition},
    };
    for (const auto& [name, value] : named) {
        if (!std::isfinite(value)) return name;
    }
    return {};
}

LogPosteriorTerms log_joint_terms(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior) {
    const Index T = data.num_obs();
    const auto& X = data.design;
    const VectorXd xb = X * state.beta;
    const VectorXd xg = X * state.gamma;
    const VectorXd& h = path.h;
    const VectorXd& y = data.returns;

    LogPosteriorTerms terms;
    terms.prior_beta = prior.beta().log_density(state.beta);
    terms.prior_gamma = prior.gamma().log_density(state.gamma);
    terms.prior_phi = prior.log_prior_phi(state.phi);
    terms.prior_rho = prior.log_prior_rho(state.rho);
    terms.prior_sigma2 = prior.log_prior_sigma2(state.sigma2);

    const double one_m_phi2 = (1.0 - state.phi) * (1.0 + state.phi);
    const double one_m_rho2 = (1.0 - state.rho) * (1.0 + state.rho);
    terms.initial = log_normal(h(0), xg(0), state.sigma2 / one_m_phi2);

    const double sigma = state.sigma();
    const double trans_var = state.sigma2 * one_m_rho2;
    const double log_trans_var = std::log(trans_var);
    double obs = 0.0;
    double trans = 0.0;
    for (Index t = 0; t < T; ++t) {
        const double resid = y(t) - xb(t);
        const double scaled = resid * std::exp(-0.5 * h(t));
        obs += -0.5 * (kLog2Pi + h(t) + scaled * scaled);
        const double mean = xg(t + 1) + state.phi * (h(t) - xg(t)) + state.rho * sigma * scaled;
        const double d = h(t + 1) - mean;
        trans += -0.5 * (kLog2Pi + log_trans_var + d * d / trans_var);
    }
    terms.observation = obs;
    terms.transition = trans;
    return terms;
}

double log_joint_posterior(const ParameterState& state, const LatentPath& path, const Dataset& data,
                           const PriorConfig& prior) {
    const LogPosteriorTerms terms = log_joint_terms(state, path, data, prior);
    const double total = terms.total();
    if (!std::isfinite(total)) {
        std::string term = terms.first_non_finite();
        if (term.empty()) term = "total";
        throw DensityError(term, "joint log posterior is not finite: term '" + term + "' diverged");
    }
    return total;
}

}  // namespace asv
