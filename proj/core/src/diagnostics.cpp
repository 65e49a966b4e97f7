#include "asv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace asv {

namespace {

constexpr std::size_t kMaxIfLag = 1000;

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Autocovariance at `lag` with denominator n.
double autocovariance(std::span<const double> x, double mean, std::size_t lag) {
    const std::size_t n = x.size();
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) acc += (x[t] - mean) * (x[t + lag] - mean);
    return acc / static_cast<double>(n);
}

void require_length(std::span<const double> draws, const char* what) {
    if (draws.size() < kMinDiagnosticLength) {
        throw std::invalid_argument(std::string(what) + " needs at least 100 draws");
    }
}

}  // namespace

double parzen_weight(double u) {
    u = std::abs(u);
    if (u <= 0.5) return 1.0 - 6.0 * u * u + 6.0 * u * u * u;
    if (u <= 1.0) return 2.0 * std::pow(1.0 - u, 3);
    return 0.0;
}

double spectral_density_at_zero(std::span<const double> draws) {
    const std::size_t n = draws.size();
    if (n < 2) return 0.0;
    const double mean = mean_of(draws);
    const auto bandwidth = static_cast<std::size_t>(4.0 * std::floor(std::cbrt(static_cast<double>(n))));
    double s = autocovariance(draws, mean, 0);
    for (std::size_t lag = 1; lag < std::min(bandwidth, n); ++lag) {
        s += 2.0 * parzen_weight(static_cast<double>(lag) / static_cast<double>(bandwidth)) *
             autocovariance(draws, mean, lag);
    }
    return std::max(s, 0.0);
}

double geweke_cd(std::span<const double> draws) {
    require_length(draws, "geweke_cd");
    const std::size_t n = draws.size();
    const auto n1 = static_cast<std::size_t>(std::floor(0.2 * static_cast<double>(n)));
    const auto n2 = static_cast<std::size_t>(std::floor(0.5 * static_cast<double>(n)));
    const auto first = draws.first(n1);
    const auto last = draws.last(n2);
    const double m1 = mean_of(first);
    const double m2 = mean_of(last);
    const double var = spectral_density_at_zero(first) / static_cast<double>(n1) +
                       spectral_density_at_zero(last) / static_cast<double>(n2);
    if (!(var > 0.0)) return m1 == m2 ? 1.0 : 0.0;
    const double z = (m1 - m2) / std::sqrt(var);
    return std::clamp(std::erfc(std::abs(z) / std::numbers::sqrt2), 0.0, 1.0);
}

std::vector<double> autocorrelations(std::span<const double> draws, std::size_t max_lag) {
    const double mean = mean_of(draws);
    const double c0 = autocovariance(draws, mean, 0);
    if (!(c0 > 0.0)) throw std::invalid_argument("autocorrelation undefined for zero-variance draws");
    max_lag = std::min(max_lag, draws.size() - 1);
    std::vector<double> rho(max_lag);
    for (std::size_t s = 1; s <= max_lag; ++s) rho[s - 1] = autocovariance(draws, mean, s) / c0;
    return rho;
}

double inefficiency_factor(std::span<const double> draws) {
    require_length(draws, "inefficiency_factor");
    const std::size_t n = draws.size();
    const double mean = mean_of(draws);
    const double c0 = autocovariance(draws, mean, 0);
    if (!(c0 > 0.0)) throw std::invalid_argument("inefficiency factor undefined for zero-variance draws");

    const double threshold = 2.0 / std::sqrt(static_cast<double>(n));
    const std::size_t cap = std::min(kMaxIfLag, n - 1);
    std::vector<double> rho;
    rho.reserve(64);
    for (std::size_t s = 1; s <= cap; ++s) {
        rho.push_back(autocovariance(draws, mean, s) / c0);
        if (std::abs(rho.back()) < threshold) break;
    }
    const double bandwidth = 2.0 * static_cast<double>(rho.size());
    double sum = 0.0;
    for (std::size_t s = 1; s <= rho.size(); ++s) {
        sum += parzen_weight(static_cast<double>(s) / bandwidth) * rho[s - 1];
    }
    return std::max(1.0 + 2.0 * sum, kMinInefficiency);
}

double sorted_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ParamSummary summarize(std::span<const double> draws, std::string name) {
    require_length(draws, "summarize");
    const std::size_t n = draws.size();
    ParamSummary s;
    s.name = std::move(name);
    s.mean = mean_of(draws);
    double ss = 0.0;
    for (double x : draws) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));

    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    s.ci_low = sorted_quantile(sorted, 0.025);
    s.ci_high = sorted_quantile(sorted, 0.975);
    s.cd = geweke_cd(draws);
    s.if_ = sorted.front() == sorted.back() ? std::numeric_limits<double>::quiet_NaN()
                                            : inefficiency_factor(draws);
    return s;
}

}  // namespace asv
