#include "support/recovery.hpp"

#include "asv/simulate.hpp"

#include <algorithm>
#include <string>

namespace asv::testing {

int RecoveryResult::num_covered() const {
    return static_cast<int>(std::count(covered.begin(), covered.end(), true));
}

RecoveryResult run_recovery(const RecoverySetup& setup, std::uint64_t seed) {
    const Index k = setup.truth.beta.size();
    SimSpec spec;
    spec.truth = setup.truth;
    spec.design = random_dummy_design(setup.T, k, setup.dummy_probability, seed + 1000);
    spec.seed = seed;
    const Dataset data = to_dataset(simulate(spec), spec.design);

    McmcConfig mcmc = setup.mcmc;
    mcmc.seed = seed + 1;
    mcmc.store_latent = false;
    const ChainOutput out = run_chain(data, PriorConfig::defaults(k), mcmc);

    RecoveryResult r;
    for (Index j = 0; j < k; ++j) r.truth.push_back(setup.truth.beta(j));
    for (Index j = 0; j < k; ++j) r.truth.push_back(setup.truth.gamma(j));
    r.truth.push_back(setup.truth.phi);
    r.truth.push_back(setup.truth.rho);
    r.truth.push_back(setup.truth.sigma2);

    for (Index c = 0; c < out.draws.cols(); ++c) {
        const VectorXd col = out.draws.col(c);
        ParamSummary s = summarize(std::vector<double>(col.data(), col.data() + col.size()),
                                   out.column_names[static_cast<std::size_t>(c)]);
        const double t = r.truth[static_cast<std::size_t>(c)];
        r.covered.push_back(s.ci_low <= t && t <= s.ci_high);
        r.summaries.push_back(std::move(s));
    }
    return r;
}

}  // namespace asv::testing
