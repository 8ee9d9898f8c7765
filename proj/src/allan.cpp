#include "carousim/allan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "carousim/kernels.hpp"

namespace carousim {

std::vector<std::size_t> default_tau_grid(std::size_t n_samples,
                                          std::size_t min_bins) {
    std::vector<std::size_t> taus;
    if (min_bins < 2) min_bins = 2;
    for (std::size_t tau = 1; tau <= n_samples / min_bins; tau *= 2) {
        taus.push_back(tau);
        if (tau > n_samples / 2) break;
    }
    return taus;
}

AllanCurve allan_variance(const SampleSeries& series,
                          std::span<const std::size_t> taus_samples) {
    validate(series);
    AllanCurve curve;
    curve.source_label = series.label;
    const std::span<const double> v(series.values);
    for (std::size_t tau : taus_samples) {
        if (tau < 1)
            throw std::invalid_argument("allan_variance: tau >= 1 sample required");
        const std::size_t bins = v.size() / tau;
        if (bins < 2) {
            curve.warnings.push_back("tau=" + std::to_string(tau) +
                                     " samples skipped: fewer than 2 bins");
            continue;
        }
        const double inv_tau = 1.0 / static_cast<double>(tau);
        double prev = kernels::sum(v.first(tau)) * inv_tau;
        double acc = 0.0;
        for (std::size_t j = 1; j < bins; ++j) {
            const double mean = kernels::sum(v.subspan(j * tau, tau)) * inv_tau;
            const double diff = mean - prev;
            acc += diff * diff;
            prev = mean;
        }
        AllanPoint p;
        p.tau = static_cast<double>(tau) * series.sample_interval;
        p.avar = acc / (2.0 * static_cast<double>(bins - 1));
        p.bins = bins;
        curve.points.push_back(p);
    }
    return curve;
}

namespace {

const AllanPoint& nearest_point(const AllanCurve& curve, double tau) {
    if (curve.points.empty())
        throw std::invalid_argument("estimate_params: empty Allan curve");
    const AllanPoint* best = &curve.points.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (const AllanPoint& p : curve.points) {
        // Nearest on a log scale, matching the dyadic grid.
        const double dist = std::abs(std::log(p.tau) - std::log(tau));
        if (dist < best_dist) {
            best_dist = dist;
            best = &p;
        }
    }
    return *best;
}

}  // namespace

GyroErrorParams estimate_params(const AllanCurve& curve, double tau_white,
                                double tau_rrw) {
    if (curve.points.size() < 2)
        throw std::invalid_argument("estimate_params: curve too short");
    GyroErrorParams params;
    params.white_variance_at_1s = nearest_point(curve, tau_white).avar;
    const AllanPoint& rrw_pt = nearest_point(curve, tau_rrw);
    params.rrw_variance = 3.0 * rrw_pt.avar / rrw_pt.tau;
    params.tau_ref_rrw = rrw_pt.tau;
    double floor = std::numeric_limits<double>::infinity();
    for (const AllanPoint& p : curve.points) floor = std::min(floor, p.avar);
    params.bias_instability = std::sqrt(floor);
    return params;
}

IntervalPrediction predict_interval(const GyroErrorParams& x,
                                    const GyroErrorParams& y,
                                    const CarouselConfig& config,
                                    std::size_t bins, AveragingMode mode) {
    validate(config);
    if (bins < 1)
        throw std::invalid_argument("predict_interval: bins >= 1 required");
    const std::size_t n = config.samples_per_rev;
    const double fs = static_cast<double>(n) / config.period;
    // Allan reading at 1 s -> per-sample white variance; continuous RRW
    // coefficient -> per-sample increment variance.
    const double wx = x.white_variance_at_1s * fs;
    const double wy = y.white_variance_at_1s * fs;
    const double qx = x.rrw_variance / fs;
    const double qy = y.rrw_variance / fs;

    IntervalPrediction out;
    out.variance.resize(bins);
    if (mode == AveragingMode::Averaged) {
        const VariancePrediction rrw = predict_avg_rrw(n, bins, qx);
        for (std::size_t t = 0; t < bins; ++t)
            out.variance[t] = wx / static_cast<double>(n) + rrw.per_bin_variance[t];
    } else {
        const CarouselRrwVariance unit =
            predict_carousel_rrw(n, 1.0, PredictionMode::Exact);
        const double var = 0.5 * (wx + wy) / static_cast<double>(n) +
                           unit.sine_part * qx + unit.cosine_part * qy;
        std::fill(out.variance.begin(), out.variance.end(), var);
    }
    out.two_sigma.resize(bins);
    for (std::size_t t = 0; t < bins; ++t)
        out.two_sigma[t] = 2.0 * std::sqrt(out.variance[t]);
    return out;
}

SampleSeries integrate_angle(const SampleSeries& series, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("integrate_angle: dt must be positive");
    std::vector<double> out(series.size());
    kernels::cumsum(series.values, out);
    kernels::scale(out, dt, out);
    return SampleSeries{std::move(out), dt, series.label + "/angle"};
}

}  // namespace carousim
