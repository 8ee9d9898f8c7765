// Sequences whose non-overlapping Allan variance is exactly constant at
// dyadic averaging times, their K-matrix factorization, and the MVUE of the
// level-draw variance.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "carousim/rng.hpp"

namespace carousim {

struct DyadicSequence {
    std::size_t levels = 0;       // n; length is 2^n
    std::vector<double> values;
    bool stochastic = false;
    std::vector<double> draws;    // x_1..x_n, stochastic only
};

// a_k of the generating sign pattern: -1/2, +1/2, +1/2, -1/2 repeating with
// period four.
std::vector<double> sign_pattern(std::size_t length);

// Deterministic sequence S_{2^n}: built from [-1/2, 1/2] by repeated
// elementwise duplication plus the sign pattern. Internally generated in
// half-integer (scaled integer) arithmetic so every dyadic bin-mean
// difference equals exactly +-1.
DyadicSequence gen_S(std::size_t levels);

// Stochastic variant: the level-i sign pattern is scaled by draw x_i.
// Equals build_K(levels) * draws exactly.
DyadicSequence gen_R(std::size_t levels, std::span<const double> draws);
DyadicSequence gen_R(std::size_t levels, Seed seed);  // unit-variance draws

// Dense K in row-major order, 2^n rows by n columns, entries +-1/2. Column i
// (1-based) is the Kronecker product of the first 2^i sign-pattern entries
// with a ones vector of length 2^{n-i}. Guarded to n <= 20.
struct KMatrix {
    std::size_t levels = 0;
    std::vector<double> entries;  // row-major

    std::size_t rows() const { return std::size_t{1} << levels; }
    std::size_t cols() const { return levels; }
    double at(std::size_t r, std::size_t c) const {
        return entries[r * levels + c];
    }
};

KMatrix build_K(std::size_t levels);

// Moore-Penrose pseudoinverse, n x 2^n row-major. Columns of K are mutually
// orthogonal with squared norm 2^n / 4, so K+ = (4 / 2^n) K'.
std::vector<double> pinv_K(std::size_t levels);

// K+ applied to a length-2^n vector using the Kronecker structure
// (O(n 2^n) time, no dense matrix). Recovers the draws of gen_R exactly.
std::vector<double> recover_draws(std::size_t levels,
                                  std::span<const double> sequence);

// Sample variance (divisor n-1, mean subtracted) of the recovered draws;
// the minimum-variance unbiased estimator of C^2. Requires levels >= 2.
double mvue_c2(const DyadicSequence& sequence);

}  // namespace carousim
