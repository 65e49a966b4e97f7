#pragma once

// Stand-alone sampler for the symmetric SV model with a constant mean and a
// constant volatility level:
//   y_t = mu_y + exp(h_t/2) eps_t,   h_{t+1} = mu + phi (h_t - mu) + eta_t.
// It shares no code with the library sampler and is used as a reference when
// the library runs with rho fixed at zero.

#include <cstdint>
#include <vector>

namespace asv::testing {

struct ReferenceSvConfig {
    long iterations = 30000;
    long burn_in = 5000;
    std::uint64_t seed = 7;
    // Priors matching the library defaults.
    double phi_a = 20.0;
    double phi_b = 1.5;
    double sigma_nu = 5.0;
    double sigma_lambda = 0.01;
    double coef_var = 100.0;
};

struct ReferenceSvDraws {
    std::vector<double> mu_y;
    std::vector<double> mu;
    std::vector<double> phi;
    std::vector<double> sigma2;
};

ReferenceSvDraws run_reference_sv(const std::vector<double>& y, const ReferenceSvConfig& config);

}  // namespace asv::testing
