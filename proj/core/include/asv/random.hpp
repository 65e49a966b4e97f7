#pragma once

#include <cstdint>
#include <random>

namespace asv {

/// Seeded random source used by the sampler and simulator.
///
/// Holds its own normal/uniform distribution objects, so two instances built
/// from the same seed produce identical streams. Not thread-safe; give each
/// chain its own instance.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace asv
