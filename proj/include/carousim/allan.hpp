// Non-overlapping Allan variance estimation, gyro error-parameter extraction
// from Allan curves, confidence-interval prediction, and angle integration.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "carousim/carousel.hpp"
#include "carousim/series.hpp"

namespace carousim {

struct AllanPoint {
    double tau = 0.0;       // seconds
    double avar = 0.0;      // (rad/s)^2
    std::size_t bins = 0;   // M
};

struct AllanCurve {
    std::vector<AllanPoint> points;      // tau strictly increasing
    std::string source_label;
    std::vector<std::string> warnings;   // taus skipped for insufficient data
};

// Default tau grid: powers of two in samples, capped so each point keeps at
// least `min_bins` bins.
std::vector<std::size_t> default_tau_grid(std::size_t n_samples,
                                          std::size_t min_bins = 9);

// sigma_A^2(tau) = 1/(2(M-1)) sum_j (ybar_{j+1} - ybar_j)^2 over
// non-overlapping bins of tau samples; trailing partial bin dropped. Taus
// that leave fewer than two bins are omitted with a warning record.
AllanCurve allan_variance(const SampleSeries& series,
                          std::span<const std::size_t> taus_samples);

struct GyroErrorParams {
    double white_variance_at_1s = 0.0;  // (rad/s)^2, Allan value at tau = 1 s
    double rrw_variance = 0.0;          // (rad/s)^2 / s
    double bias_instability = 0.0;      // rad/s, curve-floor reading
    double tau_ref_rrw = 0.0;           // seconds, where the RRW slope was read
};

// White variance read directly at tau_white; RRW inverted from the +1-slope
// relation avar(tau) = sigma_rrw^2 * tau / 3 at tau_rrw; bias instability is
// the square root of the curve minimum (no 0.664 refinement). Requested taus
// snap to the nearest curve point.
GyroErrorParams estimate_params(const AllanCurve& curve, double tau_white,
                                double tau_rrw);

enum class AveragingMode { Averaged, Carouseled };

struct IntervalPrediction {
    std::vector<double> variance;   // per bin, (rad/s)^2
    std::vector<double> two_sigma;  // rad/s
};

// White-plus-RRW variance of the per-revolution estimate. Averaged mode uses
// the x-gyro alone and grows linearly; carouseled mode averages the two
// gyros' white variances and applies the exact RRW quadratic forms (sine
// form for the x-gyro, cosine form for the y-gyro), constant across bins.
// 1/f noise is deliberately excluded.
IntervalPrediction predict_interval(const GyroErrorParams& x,
                                    const GyroErrorParams& y,
                                    const CarouselConfig& config,
                                    std::size_t bins, AveragingMode mode);

// Cumulative sum scaled by dt: rad/s estimates to accumulated radians.
SampleSeries integrate_angle(const SampleSeries& series, double dt);

}  // namespace carousim
