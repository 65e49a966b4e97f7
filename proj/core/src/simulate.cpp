#include "asv/simulate.hpp"

#include "asv/errors.hpp"
#include "asv/random.hpp"

#include <cmath>

namespace asv {

SimulatedData simulate(const SimSpec& spec) {
    const MatrixXd& X = spec.design;
    const Index k = X.cols();
    if (X.rows() < 2) throw ConfigError("simulation design needs at least two rows");
    spec.truth.validate(k);

    const Index T = X.rows() - 1;
    const ParameterState& p = spec.truth;
    const VectorXd xb = X * p.beta;
    const VectorXd xg = X * p.gamma;
    const double sigma = p.sigma();
    const double cond_sd = sigma * std::sqrt((1.0 - p.rho) * (1.0 + p.rho));

    Rng rng(spec.seed);
    SimulatedData out;
    out.returns.resize(T);
    out.path.h.resize(T + 1);
    VectorXd& h = out.path.h;

    h(0) = xg(0) + sigma / std::sqrt((1.0 - p.phi) * (1.0 + p.phi)) * rng.normal();
    for (Index t = 0; t < T; ++t) {
        const double eps = rng.normal();
        const double eta = p.rho * sigma * eps + cond_sd * rng.normal();
        out.returns(t) = xb(t) + std::exp(0.5 * h(t)) * eps;
        h(t + 1) = xg(t + 1) + p.phi * (h(t) - xg(t)) + eta;
    }
    return out;
}

Dataset to_dataset(const SimulatedData& sim, const MatrixXd& design, std::vector<std::string> labels) {
    Dataset d;
    d.returns = sim.returns;
    d.design = design;
    if (labels.empty()) {
        labels.emplace_back("const");
        for (Index j = 1; j < design.cols(); ++j) labels.push_back("x" + std::to_string(j));
    }
    d.labels = std::move(labels);
    return d;
}

MatrixXd random_dummy_design(Index T, Index k, double p, std::uint64_t seed) {
    Rng rng(seed);
    MatrixXd X = MatrixXd::Zero(T + 1, k);
    X.col(0).setOnes();
    for (Index j = 1; j < k; ++j) {
        for (Index t = 0; t <= T; ++t) X(t, j) = rng.uniform() < p ? 1.0 : 0.0;
    }
    return X;
}

}  // namespace asv
