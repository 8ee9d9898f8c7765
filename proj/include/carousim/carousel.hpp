// Carouseling and direct-averaging operators plus closed-form variance
// predictors for each error process under both operators.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "carousim/noise.hpp"
#include "carousim/series.hpp"

namespace carousim {

struct CarouselConfig {
    std::size_t samples_per_rev = 2;  // N >= 2
    double period = 1.0;              // T seconds, > 0

    double sample_interval() const {
        return period / static_cast<double>(samples_per_rev);
    }
};

void validate(const CarouselConfig& config);

// Sample i of a revolution is taken at phase 2*pi*i/N, i = 1..N; the 1/N
// averaging factor is folded into the vectors.
struct CoefficientVectors {
    std::vector<double> s;     // (1/N) sin(2 pi i / N)
    std::vector<double> c;     // (1/N) cos(2 pi i / N)
    std::vector<double> ones;  // 1/N

    static CoefficientVectors make(std::size_t n);
};

struct CarouselSignal {
    SampleSeries x;  // gyro with sensitive axis x
    SampleSeries y;
};

struct VariancePrediction {
    std::vector<double> per_bin_variance;  // (rad/s)^2, bin t = 1..m
    double cross_covariance_12 = 0.0;      // bins 1 and 2
    double asymptotic_coefficient = 0.0;   // units of sigma^2 * N
};

enum class PredictionMode { Exact, Asymptotic };

struct CarouselRrwVariance {
    double total = 0.0;
    double sine_part = 0.0;
    double cosine_part = 0.0;
};

// Two perpendicular gyros rotating at constant rate: per-sample outputs are
//   omega_x = -omega sin(phi) + omega_perp cos(phi) + eps_x
//   omega_y =  omega cos(phi) + omega_perp sin(phi) + eps_y
// with independent error superpositions per gyro.
CarouselSignal synthesize_pair(const CarouselConfig& config, double omega,
                               double omega_perp,
                               std::span<const ProcessSpec> errors_x,
                               std::span<const ProcessSpec> errors_y,
                               std::size_t revolutions, Seed seed);

// Non-overlapping block means of length n; trailing partial block dropped.
SampleSeries direct_average(const SampleSeries& series, std::size_t n);

// Per-revolution block means with a caller-supplied block length per
// revolution (variable-rate ingestion); no variance prediction attached.
SampleSeries direct_average_blocks(const SampleSeries& series,
                                   std::span<const std::size_t> block_lengths);

// One estimate of omega per revolution: -s.x_block + c.y_block.
SampleSeries carousel_average(const SampleSeries& x, const SampleSeries& y,
                              const CarouselConfig& config);

// Same, also returning the perpendicular-axis estimate c.x_block + s.y_block.
std::pair<SampleSeries, SampleSeries> carousel_average_with_perp(
    const SampleSeries& x, const SampleSeries& y, const CarouselConfig& config);

// Directly averaged RRW: bin-1 variance sigma^2 (2N^3+3N^2+N)/(6N^2), each
// later bin adds sigma^2 N; bins 1 and 2 have cross-covariance
// sigma^2 (N+1)/2.
VariancePrediction predict_avg_rrw(std::size_t n, std::size_t bins, double sigma2);

// Carouseled RRW: every revolution has the same variance and consecutive
// revolutions are uncorrelated. Exact mode evaluates the quadratic forms
// s'RR's + c'RR'c via suffix sums in O(N); asymptotic mode returns
// sigma^2 N/(2 pi^2) split into 3N/(8 pi^2) and N/(8 pi^2) parts.
CarouselRrwVariance predict_carousel_rrw(std::size_t n, double sigma2,
                                         PredictionMode mode);

// 1 - (1/(2 pi^2)) / (4/3): fraction by which the asymptotic carouseled RRW
// coefficient falls below the direct-averaging one.
double reduction_factor_rrw();

enum class WeightKind { Ones, Sine, Cosine };

// Partial sums g_m = sum_{t=1..m} c_{t-1} w_t of the flicker impulse
// response against a unit-amplitude weight pattern (w_t = 1, sin(2 pi t/N),
// or cos(2 pi t/N)). Diverges for Ones; stays bounded for Sine/Cosine with
// even N.
std::vector<double> flicker_gain_trajectory(std::size_t n_max, double d,
                                            WeightKind kind, std::size_t n_period);

// Exact variance of weights . (process realization): sigma^2 w'MM'w with
// M = I (white), R (RRW) or F (flicker). Bias carries no variance and is
// rejected.
double exact_linear_variance(std::span<const double> weights, ProcessKind kind,
                             double sigma2, double d = 0.0);

}  // namespace carousim
