#include "carousim/rng.hpp"

#include <cmath>
#include <numbers>

namespace carousim {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed substream(Seed base, std::uint64_t index) {
    return Seed{base.master, mix64(base.stream ^ mix64(index + 1))};
}

Rng::Rng(Seed seed) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed.master),
        static_cast<std::uint32_t>(seed.master >> 32),
        static_cast<std::uint32_t>(seed.stream),
        static_cast<std::uint32_t>(seed.stream >> 32)};
    engine_.seed(seq);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

}  // namespace carousim
