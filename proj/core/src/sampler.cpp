#include "asv/sampler.hpp"

#include "asv/conditionals.hpp"
#include "asv/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace asv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Proposed log volatilities beyond this magnitude are treated as outside the support.
constexpr double kMaxAbsLogVol = 50.0;

void check_state(const ParameterState& s, const VectorXd& h, std::int64_t iteration) {
    const bool ok = std::abs(s.phi) < 1.0 && std::abs(s.rho) < 1.0 && s.sigma2 > 0.0 &&
                    std::isfinite(s.sigma2) && s.beta.allFinite() && s.gamma.allFinite() && h.allFinite();
    if (!ok) {
        throw SamplerError("chain left the parameter space at iteration " + std::to_string(iteration));
    }
}

}  // namespace

void McmcConfig::validate(std::int64_t min_stored) const {
    if (n_iterations <= 0) throw ConfigError("n_iterations must be positive");
    if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
    if (burn_in >= n_iterations) throw ConfigError("burn_in must be smaller than n_iterations");
    if (thin <= 0) throw ConfigError("thin must be positive");
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
        throw ConfigError("target_acceptance must lie in (0, 1)");
    }
    if (fixed_rho && !(std::abs(*fixed_rho) < 1.0)) throw ConfigError("fixed rho must lie in (-1, 1)");
    if (num_stored() < min_stored) {
        std::ostringstream os;
        os << "(n_iterations - burn_in) / thin = " << num_stored() << " stored draws; at least " << min_stored
           << " required";
        throw ConfigError(os.str());
    }
}

double adapt_step(double step, bool accepted, std::int64_t iteration, double target) {
    const double gain = std::pow(static_cast<double>(iteration), -0.6);
    return step * std::exp(((accepted ? 1.0 : 0.0) - target) * gain);
}

ChainStart default_start(const Dataset& data, const PriorConfig& prior) {
    const Index k = data.num_covariates();
    const Index T = data.num_obs();
    ChainStart start;
    start.state.beta = VectorXd::Zero(k);
    start.state.gamma = VectorXd::Zero(k);
    start.state.phi = prior_moments_phi(prior.phi_a(), prior.phi_b()).mean;
    start.state.rho = prior_moments_phi(prior.rho_a(), prior.rho_b()).mean;
    start.state.sigma2 = 5.0 * prior.sigma_lambda() / prior.sigma_nu();

    const VectorXd& y = data.returns;
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(T - 1);
    start.path.h = VectorXd::Constant(T + 1, std::log(var));
    return start;
}

std::vector<std::string> draw_column_names(const std::vector<std::string>& labels, Index k) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(2 * k + 3));
    for (const char* prefix : {"beta", "gamma"}) {
        for (Index j = 0; j < k; ++j) {
            const std::string label = static_cast<Index>(labels.size()) == k
                                          ? labels[static_cast<std::size_t>(j)]
                                          : std::to_string(j);
            names.push_back(std::string(prefix) + "[" + label + "]");
        }
    }
    names.emplace_back("phi");
    names.emplace_back("rho");
    names.emplace_back("sigma2");
    return names;
}

ChainOutput run_chain(const Dataset& data, const PriorConfig& prior, const McmcConfig& config) {
    return run_chain(data, prior, config, default_start(data, prior));
}

ChainOutput run_chain(const Dataset& data, const PriorConfig& prior, const McmcConfig& config,
                      const ChainStart& start) {
    data.validate();
    config.validate();
    const Index T = data.num_obs();
    const Index k = data.num_covariates();
    if (prior.beta().dim() != k) {
        throw ConfigError("prior dimension " + std::to_string(prior.beta().dim()) +
                          " does not match design columns " + std::to_string(k));
    }

    ParameterState state = start.state;
    if (config.fixed_rho) state.rho = *config.fixed_rho;
    VectorXd h = start.path.h;
    try {
        state.validate(k);
        start.path.validate(T + 1);
    } catch (const ConfigError& e) {
        throw SamplerError(std::string("invalid initial state: ") + e.what());
    }
    {
        const LogPosteriorTerms terms = log_joint_terms(state, LatentPath{h}, data, prior);
        const std::string bad = terms.first_non_finite();
        if (!bad.empty()) {
            throw SamplerError("initial state has non-finite log density in term '" + bad + "'");
        }
    }

    const VectorXd& y = data.returns;
    const auto& X = data.design;
    Rng rng(config.seed);

    StepSizes steps;
    steps.h = VectorXd::Constant(T, 0.5);

    const std::int64_t n_stored = config.num_stored();
    ChainOutput out;
    out.seed_used = config.seed;
    out.column_names = draw_column_names(data.labels, k);
    out.draws.resize(n_stored, 2 * k + 3);
    if (config.store_latent) out.h_draws.resize(n_stored, T + 1);

    std::int64_t acc_phi = 0;
    std::int64_t acc_rho = 0;
    std::int64_t acc_sigma2 = 0;
    Eigen::VectorXi acc_h = Eigen::VectorXi::Zero(T);

    out.steps_after_burn_in = steps;
    std::int64_t stored = 0;
    for (std::int64_t iter = 1; iter <= config.n_iterations; ++iter) {
        const bool in_burn_in = iter <= config.burn_in;
        const bool adapt = in_burn_in || !config.adapt_during_burn_in_only;
        const LatentPath path{h};

        state.beta = beta_precision_form(state, path, data, prior).draw(rng);
        state.gamma = gamma_precision_form(state, path, data, prior).draw(rng);

        // phi, rho, sigma2 in that order, each a scalar random walk.
        const PhiRhoSigmaTarget target(state, path, data, prior);
        double current = target(state.phi, state.rho, state.sigma2);
        {
            const MhResult r = mh_scalar_step(
                state.phi, current, [&](double v) { return target(v, state.rho, state.sigma2); }, steps.phi, rng);
            state.phi = r.value;
            current = r.log_density;
            if (adapt) steps.phi = adapt_step(steps.phi, r.accepted, iter, config.target_acceptance);
            if (!in_burn_in) acc_phi += r.accepted;
        }
        if (!config.fixed_rho) {
            const MhResult r = mh_scalar_step(
                state.rho, current, [&](double v) { return target(state.phi, v, state.sigma2); }, steps.rho, rng);
            state.rho = r.value;
            current = r.log_density;
            if (adapt) steps.rho = adapt_step(steps.rho, r.accepted, iter, config.target_acceptance);
            if (!in_burn_in) acc_rho += r.accepted;
        }
        {
            // Random walk on log sigma2; the + log sigma2 term is the Jacobian.
            const double log_s2 = std::log(state.sigma2);
            const MhResult r = mh_scalar_step(
                log_s2, current + log_s2,
                [&](double v) { return target(state.phi, state.rho, std::exp(v)) + v; }, steps.log_sigma2, rng);
            state.sigma2 = std::exp(r.value);
            if (adapt) steps.log_sigma2 = adapt_step(steps.log_sigma2, r.accepted, iter, config.target_acceptance);
            if (!in_burn_in) acc_sigma2 += r.accepted;
        }

        // Single-move sweep over h_1..h_T, then an exact draw of h_{T+1}.
        const VectorXd xb = X * state.beta;
        const VectorXd xg = X * state.gamma;
        for (Index t = 0; t < T; ++t) {
            const LatentSite site(t, h, state, y, xb, xg);
            const auto log_density = [&site](double v) {
                return std::abs(v) > kMaxAbsLogVol ? -kInf : site.log_density(v);
            };
            const MhResult r = mh_scalar_step(h(t), site.log_density(h(t)), log_density, steps.h(t), rng);
            h(t) = r.value;
            if (adapt) steps.h(t) = adapt_step(steps.h(t), r.accepted, iter, config.target_acceptance);
            if (!in_burn_in) acc_h(t) += r.accepted;
        }
        const NormalMoments last = h_last_conditional(LatentPath{h}, state, data);
        h(T) = last.mean + std::sqrt(last.var) * rng.normal();

        check_state(state, h, iter);

        if (iter == config.burn_in) out.steps_after_burn_in = steps;
        if (!in_burn_in && (iter - config.burn_in) % config.thin == 0 && stored < n_stored) {
            auto row = out.draws.row(stored);
            row.head(k) = state.beta.transpose();
            row.segment(k, k) = state.gamma.transpose();
            row(2 * k) = state.phi;
            row(2 * k + 1) = state.rho;
            row(2 * k + 2) = state.sigma2;
            if (config.store_latent) out.h_draws.row(stored) = h.transpose();
            ++stored;
        }
    }
    out.final_steps = steps;

    const double n_post = static_cast<double>(config.n_iterations - config.burn_in);
    out.acceptance.phi = static_cast<double>(acc_phi) / n_post;
    out.acceptance.rho = config.fixed_rho ? 0.0 : static_cast<double>(acc_rho) / n_post;
    out.acceptance.sigma2 = static_cast<double>(acc_sigma2) / n_post;
    out.acceptance.h = acc_h.cast<double>() / n_post;
    return out;
}

}  // namespace asv
