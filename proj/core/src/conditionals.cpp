#include "asv/conditionals.hpp"

#include "asv/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace asv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PrecisionForm::PrecisionForm(MatrixXd precision, VectorXd linear)
    : precision_(std::move(precision)), linear_(std::move(linear)) {
    chol_.compute(precision_);
    if (chol_.info() != Eigen::Success) {
        throw SamplerError("conditional precision matrix is not positive-definite");
    }
}

VectorXd PrecisionForm::mean() const { return chol_.solve(linear_); }

GaussianMoments PrecisionForm::moments() const {
    const Index k = linear_.size();
    MatrixXd cov = chol_.solve(MatrixXd::Identity(k, k));
    cov = 0.5 * (cov + cov.transpose());
    return {mean(), std::move(cov)};
}

VectorXd PrecisionForm::draw(Rng& rng) const {
    VectorXd z(linear_.size());
    for (Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    // P = L L'  =>  mean + L'^{-1} z has covariance P^{-1}
    return mean() + chol_.matrixU().solve(z);
}

PrecisionForm beta_precision_form(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior) {
    const Index T = data.num_obs();
    const auto& X = data.design;
    const VectorXd& h = path.h;
    const VectorXd xg = X * state.gamma;
    const double one_m_rho2 = (1.0 - state.rho) * (1.0 + state.rho);
    const double rho_over_sigma = state.rho / state.sigma();

    VectorXd weight(T);
    VectorXd response(T);
    for (Index t = 0; t < T; ++t) {
        const double dev = h(t + 1) - xg(t + 1) - state.phi * (h(t) - xg(t));
        response(t) = data.returns(t) - rho_over_sigma * std::exp(0.5 * h(t)) * dev;
        weight(t) = std::exp(-h(t)) / one_m_rho2;
    }
    const auto Xt = X.topRows(T);
    MatrixXd P = prior.beta().precision();
    P.noalias() += Xt.transpose() * weight.asDiagonal() * Xt;
    VectorXd b = prior.beta().precision_times_mean();
    b.noalias() += Xt.transpose() * weight.cwiseProduct(response);
    return PrecisionForm(std::move(P), std::move(b));
}

PrecisionForm gamma_precision_form(const ParameterState& state, const LatentPath& path,
                                   const Dataset& data, const PriorConfig& prior) {
    const Index T = data.num_obs();
    const auto& X = data.design;
    const VectorXd& h = path.h;
    const VectorXd xb = X.topRows(T) * state.beta;
    const double sigma = state.sigma();
    const double one_m_phi2 = (1.0 - state.phi) * (1.0 + state.phi);
    const double one_m_rho2 = (1.0 - state.rho) * (1.0 + state.rho);
    const double trans_prec = 1.0 / (one_m_rho2 * state.sigma2);

    const MatrixXd Z = X.bottomRows(T) - state.phi * X.topRows(T);
    VectorXd response(T);
    for (Index t = 0; t < T; ++t) {
        response(t) = h(t + 1) - state.phi * h(t) -
                      state.rho * sigma * std::exp(-0.5 * h(t)) * (data.returns(t) - xb(t));
    }
    const auto x1 = X.row(0).transpose();
    const double init_prec = one_m_phi2 / state.sigma2;

    MatrixXd P = prior.gamma().precision();
    P.noalias() += init_prec * (x1 * x1.transpose());
    P.noalias() += trans_prec * (Z.transpose() * Z);
    VectorXd b = prior.gamma().precision_times_mean();
    b.noalias() += (init_prec * h(0)) * x1;
    b.noalias() += trans_prec * (Z.transpose() * response);
    return PrecisionForm(std::move(P), std::move(b));
}

GaussianMoments beta_conditional(const ParameterState& state, const LatentPath& path,
                                 const Dataset& data, const PriorConfig& prior) {
    return beta_precision_form(state, path, data, prior).moments();
}

GaussianMoments gamma_conditional(const ParameterState& state, const LatentPath& path,
                                  const Dataset& data, const PriorConfig& prior) {
    return gamma_precision_form(state, path, data, prior).moments();
}

PhiRhoSigmaTarget::PhiRhoSigmaTarget(const ParameterState& rest, const LatentPath& path,
                                     const Dataset& data, const PriorConfig& prior)
    : prior_(&prior) {
    const Index T = data.num_obs();
    const auto& X = data.design;
    const VectorXd& h = path.h;
    const VectorXd xg = X * rest.gamma;
    const VectorXd xb = X.topRows(T) * rest.beta;
    next_.resize(T);
    current_.resize(T);
    shock_.resize(T);
    for (Index t = 0; t < T; ++t) {
        next_(t) = h(t + 1) - xg(t + 1);
        current_(t) = h(t) - xg(t);
        shock_(t) = std::exp(-0.5 * h(t)) * (data.returns(t) - xb(t));
    }
    initial_dev_ = h(0) - xg(0);
}

double PhiRhoSigmaTarget::operator()(double phi, double rho, double sigma2) const {
    if (!(std::abs(phi) < 1.0) || !(std::abs(rho) < 1.0) || !(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        return -kInf;
    }
    const PriorConfig& prior = *prior_;
    const double T = static_cast<double>(next_.size());
    const double one_m_phi2 = (1.0 - phi) * (1.0 + phi);
    const double one_m_rho2 = (1.0 - rho) * (1.0 + rho);
    const double rho_sigma = rho * std::sqrt(sigma2);
    const double log_s2 = std::log(sigma2);

    double ss = 0.0;
    for (Index t = 0; t < next_.size(); ++t) {
        const double d = next_(t) - phi * current_(t) - rho_sigma * shock_(t);
        ss += d * d;
    }

    double value = log_scaled_beta_kernel(phi, prior.phi_a(), prior.phi_b()) +
                   log_scaled_beta_kernel(rho, prior.rho_a(), prior.rho_b());
    value += -(0.5 * prior.sigma_nu() + 1.0) * log_s2 - 0.5 * prior.sigma_lambda() / sigma2;
    value += 0.5 * std::log(one_m_phi2) - 0.5 * (T + 1.0) * log_s2;
    // Each of the T transitions has variance sigma2 (1 - rho^2).
    value += -0.5 * T * std::log(one_m_rho2);
    value += -0.5 * one_m_phi2 * initial_dev_ * initial_dev_ / sigma2;
    value += -0.5 * ss / (one_m_rho2 * sigma2);
    return value;
}

double log_fcd_phi_rho_sigma(double phi, double rho, double sigma2, const ParameterState& rest,
                             const LatentPath& path, const Dataset& data, const PriorConfig& prior) {
    return PhiRhoSigmaTarget(rest, path, data, prior)(phi, rho, sigma2);
}

LatentSite::LatentSite(Index t, const VectorXd& h, const ParameterState& state, const VectorXd& returns,
                       const VectorXd& xb, const VectorXd& xg)
    : resid_(returns(t) - xb(t)),
      next_dev_(h(t + 1) - xg(t + 1)),
      level_(xg(t)),
      phi_(state.phi),
      rho_sigma_(state.rho * state.sigma()),
      inv_trans_var_(1.0 / ((1.0 - state.rho) * (1.0 + state.rho) * state.sigma2)),
      first_(t == 0) {
    if (first_) {
        initial_prec_ = (1.0 - state.phi) * (1.0 + state.phi) / state.sigma2;
    } else {
        const double prev_resid = returns(t - 1) - xb(t - 1);
        back_mean_ = xg(t) + state.phi * (h(t - 1) - xg(t - 1)) +
                     rho_sigma_ * std::exp(-0.5 * h(t - 1)) * prev_resid;
    }
}

double LatentSite::log_density(double value) const {
    const double inv_sd = std::exp(-0.5 * value);
    const double scaled = resid_ * inv_sd;
    double out = -0.5 * value - 0.5 * scaled * scaled;
    const double fwd = next_dev_ - phi_ * (value - level_) - rho_sigma_ * scaled;
    out -= 0.5 * fwd * fwd * inv_trans_var_;
    if (first_) {
        const double d = value - level_;
        out -= 0.5 * initial_prec_ * d * d;
    } else {
        const double d = value - back_mean_;
        out -= 0.5 * d * d * inv_trans_var_;
    }
    return out;
}

double log_fcd_h_at(Index t, double value, const LatentPath& path, const ParameterState& state,
                    const Dataset& data) {
    const Index T = data.num_obs();
    if (t < 0 || t >= T) {
        throw std::out_of_range("log_fcd_h: index " + std::to_string(t) + " outside [0, " +
                                std::to_string(T) + ")");
    }
    // Only rows t-1..t+1 matter; fill just those.
    const auto& X = data.design;
    VectorXd xb = VectorXd::Zero(T + 1);
    VectorXd xg = VectorXd::Zero(T + 1);
    for (Index s = std::max<Index>(0, t - 1); s <= t + 1; ++s) {
        xb(s) = X.row(s).dot(state.beta);
        xg(s) = X.row(s).dot(state.gamma);
    }
    return LatentSite(t, path.h, state, data.returns, xb, xg).log_density(value);
}

double log_fcd_h(Index t, const LatentPath& path, const ParameterState& state, const Dataset& data) {
    if (t < 0 || t >= data.num_obs()) {
        throw std::out_of_range("log_fcd_h: index " + std::to_string(t) + " out of range");
    }
    return log_fcd_h_at(t, path.h(t), path, state, data);
}

NormalMoments h_last_conditional(const LatentPath& path, const ParameterState& state, const Dataset& data) {
    const Index T = data.num_obs();
    const auto& X = data.design;
    const double xg_last = X.row(T).dot(state.gamma);
    const double xg_prev = X.row(T - 1).dot(state.gamma);
    const double resid = data.returns(T - 1) - X.row(T - 1).dot(state.beta);
    const double h_prev = path.h(T - 1);
    const double mean = xg_last + state.phi * (h_prev - xg_prev) +
                        state.rho * state.sigma() * std::exp(-0.5 * h_prev) * resid;
    return {mean, state.sigma2 * (1.0 - state.rho) * (1.0 + state.rho)};
}

}  // namespace asv
