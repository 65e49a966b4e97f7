#include "support/recovery.hpp"

#include <gtest/gtest.h>

#include <iostream>

using namespace asv;
using asv::testing::RecoverySetup;
using asv::testing::run_recovery;

TEST(Recovery, ConstantOnlyModelCoversTheTruth) {
    RecoverySetup setup;
    setup.truth.beta = VectorXd::Constant(1, 0.05);
    setup.truth.gamma = VectorXd::Constant(1, -1.0);
    setup.truth.phi = 0.95;
    setup.truth.rho = -0.4;
    setup.truth.sigma2 = 0.09;
    setup.T = 2000;
    setup.mcmc.n_iterations = 20000;
    setup.mcmc.burn_in = 5000;
    setup.mcmc.thin = 5;

    int good_reps = 0;
    std::vector<int> per_param(5, 0);
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const auto r = run_recovery(setup, 100 + 2 * rep);
        for (std::size_t j = 0; j < 5; ++j) per_param[j] += r.covered[j] ? 1 : 0;
        if (r.num_covered() >= 4) ++good_reps;
        std::cout << "rep " << rep << ":";
        for (const auto& s : r.summaries) std::cout << ' ' << s.name << '=' << s.mean;
        std::cout << " covered " << r.num_covered() << "/5\n";
    }
    std::cout << "per-parameter coverage:";
    for (int c : per_param) std::cout << ' ' << c << "/20";
    std::cout << '\n';
    EXPECT_GE(good_reps, 18);
}
