#include "carousim/constavar.hpp"

#include <stdexcept>

namespace carousim {

namespace {

// a_k for 1-based k, as a multiple of 1/2: -1, +1, +1, -1 repeating.
inline int sign_half(std::size_t k1based) {
    switch ((k1based - 1) & 3u) {
        case 0: return -1;
        case 1: return +1;
        case 2: return +1;
        default: return -1;
    }
}

void check_levels(std::size_t levels, std::size_t max_levels = 62) {
    if (levels < 1)
        throw std::invalid_argument("constavar: levels >= 1 required");
    if (levels > max_levels)
        throw std::invalid_argument("constavar: levels too large");
}

}  // namespace

std::vector<double> sign_pattern(std::size_t length) {
    std::vector<double> a(length);
    for (std::size_t k = 1; k <= length; ++k)
        a[k - 1] = 0.5 * static_cast<double>(sign_half(k));
    return a;
}

DyadicSequence gen_S(std::size_t levels) {
    check_levels(levels, 30);
    // Twice the sequence value, kept integral throughout.
    std::vector<long long> v{-1, 1};
    for (std::size_t i = 2; i <= levels; ++i) {
        std::vector<long long> next(v.size() * 2);
        for (std::size_t j = 0; j < v.size(); ++j) {
            next[2 * j] = v[j];
            next[2 * j + 1] = v[j];
        }
        for (std::size_t k = 1; k <= next.size(); ++k)
            next[k - 1] += sign_half(k);
        v = std::move(next);
    }
    DyadicSequence seq;
    seq.levels = levels;
    seq.values.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        seq.values[j] = 0.5 * static_cast<double>(v[j]);
    return seq;
}

DyadicSequence gen_R(std::size_t levels, std::span<const double> draws) {
    check_levels(levels, 30);
    if (draws.size() != levels)
        throw std::invalid_argument("gen_R: need exactly one draw per level");
    std::vector<double> v{-0.5 * draws[0], 0.5 * draws[0]};
    for (std::size_t i = 2; i <= levels; ++i) {
        std::vector<double> next(v.size() * 2);
        for (std::size_t j = 0; j < v.size(); ++j) {
            next[2 * j] = v[j];
            next[2 * j + 1] = v[j];
        }
        for (std::size_t k = 1; k <= next.size(); ++k)
            next[k - 1] += 0.5 * static_cast<double>(sign_half(k)) * draws[i - 1];
        v = std::move(next);
    }
    DyadicSequence seq;
    seq.levels = levels;
    seq.values = std::move(v);
    seq.stochastic = true;
    seq.draws.assign(draws.begin(), draws.end());
    return seq;
}

DyadicSequence gen_R(std::size_t levels, Seed seed) {
    check_levels(levels, 30);
    Rng rng(seed);
    std::vector<double> draws(levels);
    for (double& x : draws) x = rng.gaussian();
    return gen_R(levels, draws);
}

KMatrix build_K(std::size_t levels) {
    check_levels(levels, 20);
    KMatrix k;
    k.levels = levels;
    const std::size_t rows = std::size_t{1} << levels;
    k.entries.resize(rows * levels);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 1; i <= levels; ++i) {
            const std::size_t block = r >> (levels - i);  // index into a_{1..2^i}
            k.entries[r * levels + (i - 1)] =
                0.5 * static_cast<double>(sign_half(block + 1));
        }
    return k;
}

std::vector<double> pinv_K(std::size_t levels) {
    check_levels(levels, 20);
    const KMatrix k = build_K(levels);
    const std::size_t rows = k.rows();
    const double scale = 4.0 / static_cast<double>(rows);
    std::vector<double> p(levels * rows);
    for (std::size_t i = 0; i < levels; ++i)
        for (std::size_t r = 0; r < rows; ++r)
            p[i * rows + r] = scale * k.at(r, i);
    return p;
}

std::vector<double> recover_draws(std::size_t levels,
                                  std::span<const double> sequence) {
    check_levels(levels, 30);
    const std::size_t rows = std::size_t{1} << levels;
    if (sequence.size() != rows)
        throw std::invalid_argument("recover_draws: length must be 2^levels");
    const double scale = 4.0 / static_cast<double>(rows);
    std::vector<double> x(levels, 0.0);
    for (std::size_t i = 1; i <= levels; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t block = r >> (levels - i);
            acc += 0.5 * static_cast<double>(sign_half(block + 1)) * sequence[r];
        }
        x[i - 1] = scale * acc;
    }
    return x;
}

double mvue_c2(const DyadicSequence& sequence) {
    if (sequence.levels < 2)
        throw std::invalid_argument("mvue_c2: levels >= 2 required");
    const std::vector<double> x = recover_draws(sequence.levels, sequence.values);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size() - 1);
}

}  // namespace carousim
