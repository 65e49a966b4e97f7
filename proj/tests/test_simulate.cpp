#include "asv/model.hpp"
#include "asv/simulate.hpp"
#include "support/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace asv;
namespace at = asv::testing;

namespace {

SimSpec spec_for(Index T, double phi, double rho, double sigma2, std::uint64_t seed, Index k = 1) {
    SimSpec s;
    s.design = random_dummy_design(T, k, 0.3, seed + 77);
    s.truth.beta = VectorXd::Zero(k);
    s.truth.gamma = VectorXd::Zero(k);
    s.truth.phi = phi;
    s.truth.rho = rho;
    s.truth.sigma2 = sigma2;
    s.seed = seed;
    return s;
}

struct Shocks {
    std::vector<double> eps;
    std::vector<double> eta;
};

// Inverts the generative equations.
Shocks recover_shocks(const SimSpec& spec, const SimulatedData& sim) {
    const VectorXd xb = spec.design * spec.truth.beta;
    const VectorXd xg = spec.design * spec.truth.gamma;
    const auto& h = sim.path.h;
    Shocks s;
    for (Index t = 0; t < sim.returns.size(); ++t) {
        s.eps.push_back((sim.returns(t) - xb(t)) * std::exp(-0.5 * h(t)));
        s.eta.push_back(h(t + 1) - xg(t + 1) - spec.truth.phi * (h(t) - xg(t)));
    }
    return s;
}

std::vector<double> to_vector(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST(Simulate, DegenerateVolatilityGivesUnitResiduals) {
    SimSpec spec = spec_for(100000, 0.0, 0.0, 1e-20, 1, 2);
    spec.truth.beta << 0.3, -1.0;
    const SimulatedData sim = simulate(spec);
    EXPECT_LT(sim.path.h.cwiseAbs().maxCoeff(), 1e-8);
    const VectorXd resid = sim.returns - spec.design.topRows(100000) * spec.truth.beta;
    EXPECT_NEAR(at::variance(to_vector(resid)), 1.0, 0.02);
}

TEST(Simulate, LeverageCorrelationIsRecovered) {
    const SimSpec spec = spec_for(100000, 0.95, -0.9, 0.09, 2);
    const SimulatedData sim = simulate(spec);
    const Shocks s = recover_shocks(spec, sim);
    EXPECT_NEAR(at::correlation(s.eps, s.eta), -0.9, 0.01);
    EXPECT_NEAR(at::variance(s.eta), 0.09, 0.09 * 0.02);
}

TEST(Simulate, ZeroLeverageShocksAreUncorrelated) {
    const Index T = 100000;
    const SimSpec spec = spec_for(T, 0.9, 0.0, 0.09, 3);
    const Shocks s = recover_shocks(spec, simulate(spec));
    EXPECT_LT(std::abs(at::correlation(s.eps, s.eta)), 3.0 / std::sqrt(static_cast<double>(T)));
}

TEST(Simulate, StationaryVarianceOfLogVolatility) {
    // sigma2 / (1 - phi^2) = 0.09 / 0.19 = 0.47368...
    const SimSpec spec = spec_for(100000, 0.9, -0.4, 0.09, 4);
    const SimulatedData sim = simulate(spec);
    EXPECT_NEAR(at::variance(to_vector(sim.path.h)), 0.09 / 0.19, 0.02 * 0.09 / 0.19);
}

TEST(Simulate, LagOneAutocorrelationIsPhi) {
    const Index T = 100000;
    const SimSpec spec = spec_for(T, 0.8, -0.4, 0.09, 5);
    const std::vector<double> h = to_vector(simulate(spec).path.h);
    const std::vector<double> a(h.begin(), h.end() - 1);
    const std::vector<double> b(h.begin() + 1, h.end());
    EXPECT_NEAR(at::correlation(a, b), 0.8, 3.0 / std::sqrt(static_cast<double>(T)));
}

TEST(Simulate, LogJointIsFiniteForEverySeed) {
    const PriorConfig prior = PriorConfig::defaults(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SimSpec spec = spec_for(300, 0.97, -0.6, 0.2, seed, 3);
        spec.truth.beta << 0.1, 0.2, -0.1;
        spec.truth.gamma << -0.5, 0.3, 0.2;
        const SimulatedData sim = simulate(spec);
        const Dataset data = to_dataset(sim, spec.design);
        EXPECT_NO_THROW(data.validate());
        EXPECT_TRUE(std::isfinite(log_joint_posterior(spec.truth, sim.path, data, prior))) << "seed " << seed;
    }
}

TEST(Simulate, DeterministicGivenSeed) {
    const SimSpec spec = spec_for(500, 0.9, -0.4, 0.09, 6);
    const SimulatedData a = simulate(spec);
    const SimulatedData b = simulate(spec);
    EXPECT_TRUE(a.returns == b.returns);
    EXPECT_TRUE(a.path.h == b.path.h);
    SimSpec other = spec;
    other.seed = 7;
    EXPECT_FALSE(simulate(other).returns == a.returns);
}

TEST(Simulate, DummyDesignShape) {
    const MatrixXd X = random_dummy_design(1000, 3, 0.25, 8);
    EXPECT_EQ(X.rows(), 1001);
    EXPECT_TRUE((X.col(0).array() == 1.0).all());
    for (Index j = 1; j < 3; ++j) {
        EXPECT_TRUE((X.col(j).array() == 0.0 || X.col(j).array() == 1.0).all());
        EXPECT_NEAR(X.col(j).mean(), 0.25, 0.05);
    }
    const Dataset d = to_dataset(simulate(SimSpec{spec_for(1000, 0.5, 0.0, 0.1, 9, 3).truth, X, 9}), X);
    EXPECT_EQ(d.labels.size(), 3u);
    EXPECT_EQ(d.labels[0], "const");
}
