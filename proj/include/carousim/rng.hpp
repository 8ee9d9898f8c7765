// Seedable random number generation with an explicitly named algorithm so
// that runs are reproducible across builds. The engine is std::mt19937_64
// (fully specified by the C++ standard) and Gaussian variates come from a
// hand-rolled Box-Muller transform; std::normal_distribution is
// implementation-defined and therefore avoided.
#pragma once

#include <cstdint>
#include <random>

namespace carousim {

struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

// splitmix64 finalizer, used to derive independent substreams.
std::uint64_t mix64(std::uint64_t x);

// Deterministic substream for realization / process index `index`.
Seed substream(Seed base, std::uint64_t index);

class Rng {
public:
    explicit Rng(Seed seed);

    // Uniform in [0, 1) with 53 random bits.
    double uniform();

    // Standard normal variate (Box-Muller, pairs cached).
    double gaussian();

    // Algorithm identifier embedded in report provenance.
    static constexpr const char* algorithm = "mt19937_64+box-muller";

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace carousim
