#include "asv/conditionals.hpp"
#include "support/oracle.hpp"

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace asv;
using asv::testing::fit_quadratic;
using asv::testing::Instance;
using asv::testing::random_instance;
using asv::testing::rel_diff;

namespace {

double joint_with(const Instance& inst, const ParameterState& s, const LatentPath& p) {
    return log_joint_terms(s, p, inst.data, inst.prior).total();
}

Instance fixed_instance(Index T, Index k, std::uint64_t seed) {
    Rng rng(seed);
    for (;;) {
        Instance inst = random_instance(rng, T, k);
        if (inst.data.num_obs() == T && inst.data.num_covariates() == k) return inst;
    }
}

}  // namespace

TEST(BetaConditional, ApproachesOlsUnderFlatPriorAndUnitVariance) {
    const Index T = 40, k = 3;
    Rng rng(3);
    Dataset data;
    data.returns.resize(T);
    data.design.resize(T + 1, k);
    for (Index t = 0; t <= T; ++t) {
        data.design(t, 0) = 1.0;
        data.design(t, 1) = rng.normal();
        data.design(t, 2) = rng.uniform() < 0.3 ? 1.0 : 0.0;
    }
    for (Index t = 0; t < T; ++t) data.returns(t) = rng.normal();
    data.labels = {"a", "b", "c"};

    ParameterState s;
    s.beta = VectorXd::Zero(k);
    s.gamma = VectorXd::Zero(k);
    s.phi = 0.5;
    s.rho = 0.0;
    s.sigma2 = 0.2;
    LatentPath path{VectorXd::Zero(T + 1)};
    const PriorConfig prior(GaussianPrior::isotropic(k, 1e12), GaussianPrior::isotropic(k, 100.0), {});

    const GaussianMoments m = beta_conditional(s, path, data, prior);
    const MatrixXd X = data.design.topRows(T);
    const VectorXd ols = (X.transpose() * X).ldlt().solve(X.transpose() * data.returns);
    EXPECT_LT((m.mean - ols).cwiseAbs().maxCoeff(), 1e-8);
    const MatrixXd ols_cov = (X.transpose() * X).inverse();
    EXPECT_LT(rel_diff(m.cov, ols_cov), 1e-8);
}

TEST(BetaConditional, ConstantOnlyConjugateMean) {
    const Index T = 7;
    Dataset data;
    data.returns.resize(T);
    data.returns << 0.4, -1.2, 0.3, 2.0, 0.1, -0.5, 0.9;
    data.design = MatrixXd::Ones(T + 1, 1);
    data.labels = {"const"};
    ParameterState s;
    s.beta = VectorXd::Zero(1);
    s.gamma = VectorXd::Zero(1);
    s.phi = 0.3;
    s.rho = 0.0;
    s.sigma2 = 0.5;
    LatentPath path{VectorXd::Zero(T + 1)};
    const GaussianMoments m = beta_conditional(s, path, data, PriorConfig::defaults(1));
    EXPECT_NEAR(m.mean(0), data.returns.sum() / (T + 0.01), 1e-14);
    EXPECT_NEAR(m.cov(0, 0), 1.0 / (T + 0.01), 1e-15);
}

TEST(BetaConditional, MatchesFiniteDifferenceOfJoint) {
    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        const auto f = [&](const VectorXd& b) {
            ParameterState s = inst.state;
            s.beta = b;
            return joint_with(inst, s, inst.path);
        };
        const auto fit = fit_quadratic(f, inst.state.beta, 0.5);
        const GaussianMoments m = beta_conditional(inst.state, inst.path, inst.data, inst.prior);
        EXPECT_LT(rel_diff(m.mean, fit.mean), 1e-8) << "rep " << rep;
        EXPECT_LT(rel_diff(m.cov, fit.cov), 1e-8) << "rep " << rep;
    }
}

TEST(GammaConditional, MatchesFiniteDifferenceOfJoint) {
    Rng rng(19);
    for (int rep = 0; rep < 100; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        const auto f = [&](const VectorXd& g) {
            ParameterState s = inst.state;
            s.gamma = g;
            return joint_with(inst, s, inst.path);
        };
        const auto fit = fit_quadratic(f, inst.state.gamma, 0.5);
        const GaussianMoments m = gamma_conditional(inst.state, inst.path, inst.data, inst.prior);
        EXPECT_LT(rel_diff(m.mean, fit.mean), 1e-8) << "rep " << rep;
        EXPECT_LT(rel_diff(m.cov, fit.cov), 1e-8) << "rep " << rep;
    }
}

TEST(GammaConditional, NoPersistenceScalarCase) {
    // phi = rho = 0, k = 1: every h_t is an independent N(gamma, sigma2) observation.
    const Index T = 6;
    Dataset data;
    data.returns = VectorXd::LinSpaced(T, -1.0, 1.0);
    data.design = MatrixXd::Ones(T + 1, 1);
    data.labels = {"const"};
    ParameterState s;
    s.beta = VectorXd::Zero(1);
    s.gamma = VectorXd::Zero(1);
    s.phi = 0.0;
    s.rho = 0.0;
    s.sigma2 = 0.4;
    LatentPath path{VectorXd(T + 1)};
    path.h << 0.1, -0.3, 0.5, 0.2, -0.1, 0.7, 0.0;
    const GaussianMoments m = gamma_conditional(s, path, data, PriorConfig::defaults(1));
    const double prec = (T + 1) / s.sigma2 + 0.01;
    EXPECT_NEAR(m.cov(0, 0), 1.0 / prec, 1e-14);
    EXPECT_NEAR(m.mean(0), path.h.sum() / s.sigma2 / prec, 1e-14);
}

TEST(GammaConditional, DrawsFollowTheirMoments) {
    const Instance inst = fixed_instance(8, 3, 23);
    const PrecisionForm form = gamma_precision_form(inst.state, inst.path, inst.data, inst.prior);
    const GaussianMoments m = form.moments();
    Rng rng(101);
    const int n = 100000;
    const Index k = m.mean.size();
    VectorXd sum = VectorXd::Zero(k);
    MatrixXd outer = MatrixXd::Zero(k, k);
    for (int i = 0; i < n; ++i) {
        const VectorXd d = form.draw(rng) - m.mean;
        sum += d;
        outer += d * d.transpose();
    }
    const VectorXd avg = sum / n;
    const MatrixXd cov = outer / n;
    for (Index j = 0; j < k; ++j) {
        const double se = std::sqrt(m.cov(j, j) / n);
        EXPECT_LT(std::abs(avg(j)), 4.0 * se) << "coordinate " << j;
        for (Index l = 0; l < k; ++l) {
            // Var of a product of jointly normal variables.
            const double se_cov = std::sqrt((m.cov(j, j) * m.cov(l, l) + m.cov(j, l) * m.cov(j, l)) / n);
            EXPECT_LT(std::abs(cov(j, l) - m.cov(j, l)), 4.0 * se_cov);
        }
    }
}

TEST(GaussianConditionals, CovarianceIsSymmetricPositiveDefinite) {
    Rng rng(29);
    for (int rep = 0; rep < 50; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        for (const GaussianMoments& m : {beta_conditional(inst.state, inst.path, inst.data, inst.prior),
                                         gamma_conditional(inst.state, inst.path, inst.data, inst.prior)}) {
            EXPECT_LT((m.cov - m.cov.transpose()).cwiseAbs().maxCoeff(), 1e-12);
            Eigen::LLT<MatrixXd> llt(m.cov);
            ASSERT_EQ(llt.info(), Eigen::Success);
            EXPECT_GT(llt.matrixL().toDenseMatrix().diagonal().minCoeff(), 0.0);
        }
    }
}

TEST(PhiRhoSigma, DifferencesMatchJoint) {
    Rng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        const PhiRhoSigmaTarget target(inst.state, inst.path, inst.data, inst.prior);
        ParameterState other = inst.state;
        other.phi = -0.9 + 1.8 * rng.uniform();
        other.rho = -0.9 + 1.8 * rng.uniform();
        other.sigma2 = 0.05 + 3.0 * rng.uniform();
        const double lib = target(other.phi, other.rho, other.sigma2) -
                           target(inst.state.phi, inst.state.rho, inst.state.sigma2);
        const double ref = joint_with(inst, other, inst.path) - joint_with(inst, inst.state, inst.path);
        EXPECT_LT(rel_diff(lib, ref), 1e-10) << "rep " << rep;
        EXPECT_DOUBLE_EQ(log_fcd_phi_rho_sigma(other.phi, other.rho, other.sigma2, inst.state, inst.path,
                                               inst.data, inst.prior),
                         target(other.phi, other.rho, other.sigma2));
    }
}

TEST(PhiRhoSigma, VanishesAtTheBoundaries) {
    const Instance inst = fixed_instance(6, 2, 37);
    const PhiRhoSigmaTarget target(inst.state, inst.path, inst.data, inst.prior);
    for (double r : {1.0, -1.0, 1.5}) {
        EXPECT_EQ(target(0.5, r, 1.0), -INFINITY);
        EXPECT_EQ(target(r, 0.0, 1.0), -INFINITY);
    }
    EXPECT_EQ(target(0.5, 0.0, 0.0), -INFINITY);
    EXPECT_EQ(target(0.5, 0.0, -1.0), -INFINITY);
    // Decreasing without bound as |rho| -> 1 (generic data leave a nonzero residual).
    double prev = target(0.5, 0.99, 1.0);
    for (int j = 3; j <= 9; ++j) {
        const double v = target(0.5, 1.0 - std::pow(10.0, -j), 1.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, -1e6);
}

TEST(PhiRhoSigma, AllZeroExampleDifference) {
    // y = 0, h = 0, beta = gamma = 0: only priors and log-determinants move.
    const Index T = 4;
    Dataset data;
    data.returns = VectorXd::Zero(T);
    data.design = MatrixXd::Ones(T + 1, 1);
    data.labels = {"const"};
    ParameterState s;
    s.beta = VectorXd::Zero(1);
    s.gamma = VectorXd::Zero(1);
    LatentPath path{VectorXd::Zero(T + 1)};
    const PriorConfig prior = PriorConfig::defaults(1);
    const PhiRhoSigmaTarget target(s, path, data, prior);
    // phi: 19 log(1+phi) + 0.5 log(1-phi) + 0.5 log(1-phi^2); sigma2 terms cancel.
    const double expected = 19.0 * std::log(1.5) + 0.5 * std::log(0.5) + 0.5 * std::log(0.75);
    EXPECT_NEAR(target(0.5, 0.0, 1.0) - target(0.0, 0.0, 1.0), expected, 1e-13);
}

TEST(LatentConditional, DifferencesMatchJointAtEverySite) {
    const Instance inst = fixed_instance(6, 2, 41);
    const Index T = inst.data.num_obs();
    for (Index t : {Index{0}, Index{2}, T - 1}) {
        for (double v : {-1.3, 0.2, 2.4}) {
            LatentPath moved = inst.path;
            moved.h(t) = v;
            const double lib = log_fcd_h_at(t, v, inst.path, inst.state, inst.data) -
                               log_fcd_h(t, inst.path, inst.state, inst.data);
            const double ref = joint_with(inst, inst.state, moved) - joint_with(inst, inst.state, inst.path);
            EXPECT_LT(rel_diff(lib, ref), 1e-10) << "t = " << t;
        }
    }
}

TEST(LatentConditional, DifferencesMatchJointOnRandomInstances) {
    Rng rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        const Index T = inst.data.num_obs();
        const Index t = static_cast<Index>(rng.uniform() * static_cast<double>(T));
        const double v = inst.path.h(t) + rng.normal();
        LatentPath moved = inst.path;
        moved.h(t) = v;
        const double lib = log_fcd_h_at(t, v, inst.path, inst.state, inst.data) -
                           log_fcd_h(t, inst.path, inst.state, inst.data);
        const double ref = joint_with(inst, inst.state, moved) - joint_with(inst, inst.state, inst.path);
        EXPECT_LT(rel_diff(lib, ref), 1e-10) << "rep " << rep << " t " << t;
    }
}

TEST(LatentConditional, RejectsIndicesOutsideTheMetropolisRange) {
    const Instance inst = fixed_instance(6, 1, 47);
    EXPECT_THROW(log_fcd_h(-1, inst.path, inst.state, inst.data), std::out_of_range);
    EXPECT_THROW(log_fcd_h(6, inst.path, inst.state, inst.data), std::out_of_range);
}

TEST(LatentConditional, ZeroRhoModeSolvesStationarityEquation) {
    Instance inst = fixed_instance(6, 2, 53);
    inst.state.rho = 0.0;
    const Index t = 2;
    const auto& X = inst.data.design;
    const auto& h = inst.path.h;
    const double phi = inst.state.phi;
    const double s2 = inst.state.sigma2;
    const double l_prev = X.row(t - 1).dot(inst.state.gamma);
    const double l = X.row(t).dot(inst.state.gamma);
    const double n = h(t + 1) - X.row(t + 1).dot(inst.state.gamma);
    const double back = l + phi * (h(t - 1) - l_prev);
    const double a = (back + phi * phi * l + phi * n) / (1.0 + phi * phi);
    const double v = s2 / (1.0 + phi * phi);
    const double r = inst.data.returns(t) - X.row(t).dot(inst.state.beta);
    // Root of the strictly decreasing score by bisection.
    const auto score = [&](double x) { return -0.5 + 0.5 * r * r * std::exp(-x) - (x - a) / v; };
    double lo = -30.0, hi = 30.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (score(mid) > 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);

    // Golden-section maximisation of the library conditional.
    const auto f = [&](double x) { return log_fcd_h_at(t, x, inst.path, inst.state, inst.data); };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double A = -30.0, B = 30.0;
    double c = B - g * (B - A), d = A + g * (B - A);
    while (B - A > 1e-9) {
        if (f(c) > f(d)) {
            B = d;
        } else {
            A = c;
        }
        c = B - g * (B - A);
        d = A + g * (B - A);
    }
    EXPECT_NEAR(0.5 * (A + B), root, 1e-6);
}

TEST(LatentConditional, ZeroResidualLeavesOnlyGaussianTerms) {
    Instance inst = fixed_instance(6, 2, 59);
    const Index t = 3;
    const auto& X = inst.data.design;
    inst.data.returns(t) = X.row(t).dot(inst.state.beta);
    const auto& h = inst.path.h;
    const double phi = inst.state.phi;
    const double tv = inst.state.sigma2 * (1.0 - inst.state.rho * inst.state.rho);
    const double l = X.row(t).dot(inst.state.gamma);
    const double n = h(t + 1) - X.row(t + 1).dot(inst.state.gamma);
    const double prev_resid = inst.data.returns(t - 1) - X.row(t - 1).dot(inst.state.beta);
    const double back = l + phi * (h(t - 1) - X.row(t - 1).dot(inst.state.gamma)) +
                        inst.state.rho * inst.state.sigma() * std::exp(-0.5 * h(t - 1)) * prev_resid;
    const auto hand = [&](double x) {
        return -0.5 * x - 0.5 * (x - back) * (x - back) / tv - 0.5 * (n - phi * (x - l)) * (n - phi * (x - l)) / tv;
    };
    for (double x : {-2.0, 0.3, 1.7}) {
        const double lib = log_fcd_h_at(t, x, inst.path, inst.state, inst.data) -
                           log_fcd_h_at(t, 0.0, inst.path, inst.state, inst.data);
        EXPECT_NEAR(lib, hand(x) - hand(0.0), 1e-12);
    }
}

TEST(LastLatent, ZeroRhoIsTheAutoregression) {
    Instance inst = fixed_instance(6, 2, 61);
    inst.state.rho = 0.0;
    const Index T = inst.data.num_obs();
    const auto& X = inst.data.design;
    const NormalMoments m = h_last_conditional(inst.path, inst.state, inst.data);
    const double expected =
        X.row(T).dot(inst.state.gamma) + inst.state.phi * (inst.path.h(T - 1) - X.row(T - 1).dot(inst.state.gamma));
    EXPECT_NEAR(m.mean, expected, 1e-14);
    EXPECT_NEAR(m.var, inst.state.sigma2, 1e-15);

    inst.state.phi = 0.0;
    inst.state.gamma.setZero();
    const NormalMoments z = h_last_conditional(inst.path, inst.state, inst.data);
    EXPECT_EQ(z.mean, 0.0);
    EXPECT_EQ(z.var, inst.state.sigma2);
}

TEST(LastLatent, DifferencesMatchJoint) {
    Rng rng(67);
    for (int rep = 0; rep < 100; ++rep) {
        const Instance inst = random_instance(rng, 8, 3);
        const Index T = inst.data.num_obs();
        const NormalMoments m = h_last_conditional(inst.path, inst.state, inst.data);
        const double v = inst.path.h(T) + rng.normal();
        LatentPath moved = inst.path;
        moved.h(T) = v;
        const auto lognorm = [&](double x) { return -0.5 * (x - m.mean) * (x - m.mean) / m.var; };
        const double lib = lognorm(v) - lognorm(inst.path.h(T));
        const double ref = joint_with(inst, inst.state, moved) - joint_with(inst, inst.state, inst.path);
        EXPECT_LT(rel_diff(lib, ref), 1e-10);
    }
}
