// Synthesis of the stochastic gyro error processes: additive bias, white
// noise, rate random walk, and 1/f (flicker) noise modeled as a fractional
// integral of white noise. All generators are pure functions of
// (parameters, seed).
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "carousim/rng.hpp"
#include "carousim/series.hpp"

namespace carousim {

enum class ProcessKind { Bias, White, Rrw, Flicker };

const char* to_string(ProcessKind k);
ProcessKind process_kind_from_string(const std::string& s);

struct ProcessSpec {
    ProcessKind kind = ProcessKind::White;
    double variance = 0.0;    // driving-noise variance; unused for Bias
    double bias_value = 0.0;  // Bias only, rad/s
    double d = 0.0;           // Flicker only, fractional integration order in (0,1)
};

void validate(const ProcessSpec& spec);

// First column of the unit lower triangular Toeplitz fractional-integration
// matrix F. The full matrix is only materialized on request.
struct FractionalMatrix {
    std::size_t n = 0;
    std::vector<double> coefficients;  // c_0 .. c_{n-1}, c_0 == 1

    // Dense row-major F, guarded to modest sizes.
    std::vector<double> dense() const;
};

// c_0 = 1, c_k = c_{k-1} * (k-1+d)/k. Equivalent to the Gamma-function ratio
// Gamma(k+d) / (Gamma(k+1) Gamma(d)) but free of Gamma overflow at large k.
FractionalMatrix flicker_coefficients(std::size_t n, double d);

enum class ConvolutionPath { Auto, Direct, Fft };

SampleSeries gen_white(std::size_t n, double variance, Seed seed,
                       double sample_interval = 1.0);

// Running cumulative sum of a white sequence; r_0 = 0, so the first output
// equals the first increment.
SampleSeries gen_rrw(std::size_t n, double variance, Seed seed,
                     double sample_interval = 1.0);

SampleSeries gen_bias(std::size_t n, double bias_value,
                      double sample_interval = 1.0);

// Fractional integration of an explicit driving sequence (causal, zero-padded
// when the FFT path is used). Exposed so tests can drive it with impulses.
std::vector<double> fractional_integrate(std::span<const double> driving, double d,
                                         ConvolutionPath path = ConvolutionPath::Auto);

SampleSeries gen_flicker(std::size_t n, double variance, double d, Seed seed,
                         ConvolutionPath path = ConvolutionPath::Auto,
                         double sample_interval = 1.0);

// Elementwise superposition of one realization per spec; sub-seeds are
// derived from (seed, spec index), so a spec's realization does not depend
// on the other specs present.
SampleSeries compose_error(std::span<const ProcessSpec> specs, std::size_t n,
                           Seed seed, double sample_interval = 1.0);

}  // namespace carousim
