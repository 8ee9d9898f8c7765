#include "carousim/carousel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "carousim/kernels.hpp"

namespace carousim {

namespace {

constexpr double kPi = std::numbers::pi;

// Sum of squared suffix sums: w'RR'w for the length-n cumulative-sum matrix
// R, without materializing it.
double suffix_quadratic_form(std::span<const double> w) {
    double acc = 0.0;
    double suffix = 0.0;
    for (std::size_t i = w.size(); i-- > 0;) {
        suffix += w[i];
        acc += suffix * suffix;
    }
    return acc;
}

}  // namespace

void validate(const CarouselConfig& config) {
    if (config.samples_per_rev < 2)
        throw std::invalid_argument("CarouselConfig: N >= 2 required");
    if (!(config.period > 0.0) || !std::isfinite(config.period))
        throw std::invalid_argument("CarouselConfig: period must be positive");
}

CoefficientVectors CoefficientVectors::make(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("CoefficientVectors: N >= 2 required");
    CoefficientVectors v;
    v.s.resize(n);
    v.c.resize(n);
    v.ones.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 1; i <= n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v.s[i - 1] = std::sin(phi) / static_cast<double>(n);
        v.c[i - 1] = std::cos(phi) / static_cast<double>(n);
    }
    return v;
}

CarouselSignal synthesize_pair(const CarouselConfig& config, double omega,
                               double omega_perp,
                               std::span<const ProcessSpec> errors_x,
                               std::span<const ProcessSpec> errors_y,
                               std::size_t revolutions, Seed seed) {
    validate(config);
    if (revolutions < 1)
        throw std::invalid_argument("synthesize_pair: revolutions >= 1 required");
    const std::size_t n = config.samples_per_rev;
    const std::size_t total = revolutions * n;
    const double dt = config.sample_interval();

    std::vector<double> x(total), y(total);
    for (std::size_t k = 0; k < total; ++k) {
        const std::size_t i = (k % n) + 1;  // phase index within the revolution
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        x[k] = -omega * std::sin(phi) + omega_perp * std::cos(phi);
        y[k] = omega * std::cos(phi) + omega_perp * std::sin(phi);
    }
    if (!errors_x.empty()) {
        SampleSeries ex = compose_error(errors_x, total, substream(seed, 0), dt);
        kernels::add(x, ex.values, x);
    }
    if (!errors_y.empty()) {
        SampleSeries ey = compose_error(errors_y, total, substream(seed, 1), dt);
        kernels::add(y, ey.values, y);
    }
    return CarouselSignal{SampleSeries{std::move(x), dt, "gyro-x"},
                          SampleSeries{std::move(y), dt, "gyro-y"}};
}

SampleSeries direct_average(const SampleSeries& series, std::size_t n) {
    if (n < 1)
        throw std::invalid_argument("direct_average: N >= 1 required");
    const std::size_t bins = series.size() / n;
    std::vector<double> out(bins);
    const std::span<const double> v(series.values);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t b = 0; b < bins; ++b)
        out[b] = kernels::sum(v.subspan(b * n, n)) * inv;
    return SampleSeries{std::move(out),
                        series.sample_interval * static_cast<double>(n),
                        series.label + "/averaged"};
}

SampleSeries direct_average_blocks(const SampleSeries& series,
                                   std::span<const std::size_t> block_lengths) {
    std::vector<double> out;
    out.reserve(block_lengths.size());
    const std::span<const double> v(series.values);
    std::size_t pos = 0;
    for (std::size_t len : block_lengths) {
        if (len < 1)
            throw std::invalid_argument("direct_average_blocks: block length >= 1");
        if (pos + len > v.size()) break;  // trailing incomplete revolution dropped
        out.push_back(kernels::sum(v.subspan(pos, len)) / static_cast<double>(len));
        pos += len;
    }
    return SampleSeries{std::move(out), series.sample_interval,
                        series.label + "/averaged-var"};
}

namespace {

std::pair<SampleSeries, SampleSeries> carousel_core(const SampleSeries& x,
                                                    const SampleSeries& y,
                                                    const CarouselConfig& config,
                                                    bool want_perp) {
    validate(config);
    if (x.size() != y.size())
        throw std::invalid_argument("carousel_average: x/y length mismatch");
    const std::size_t n = config.samples_per_rev;
    if (x.size() % n != 0)
        throw std::invalid_argument(
            "carousel_average: length must be a multiple of N");
    const CoefficientVectors cv = CoefficientVectors::make(n);
    const std::size_t revs = x.size() / n;
    std::vector<double> out(revs), perp(want_perp ? revs : 0);
    const std::span<const double> vx(x.values), vy(y.values);
    for (std::size_t t = 0; t < revs; ++t) {
        const auto bx = vx.subspan(t * n, n);
        const auto by = vy.subspan(t * n, n);
        out[t] = -kernels::dot(cv.s, bx) + kernels::dot(cv.c, by);
        if (want_perp)
            perp[t] = kernels::dot(cv.c, bx) + kernels::dot(cv.s, by);
    }
    const double dt = x.sample_interval * static_cast<double>(n);
    return {SampleSeries{std::move(out), dt, "carouseled"},
            SampleSeries{std::move(perp), dt, "carouseled-perp"}};
}

}  // namespace

SampleSeries carousel_average(const SampleSeries& x, const SampleSeries& y,
                              const CarouselConfig& config) {
    return carousel_core(x, y, config, false).first;
}

std::pair<SampleSeries, SampleSeries> carousel_average_with_perp(
    const SampleSeries& x, const SampleSeries& y, const CarouselConfig& config) {
    return carousel_core(x, y, config, true);
}

VariancePrediction predict_avg_rrw(std::size_t n, std::size_t bins, double sigma2) {
    if (n < 1 || bins < 1)
        throw std::invalid_argument("predict_avg_rrw: N >= 1 and bins >= 1");
    const double nd = static_cast<double>(n);
    const double first = sigma2 * (2.0 * nd * nd * nd + 3.0 * nd * nd + nd) /
                         (6.0 * nd * nd);
    VariancePrediction p;
    p.per_bin_variance.resize(bins);
    for (std::size_t t = 0; t < bins; ++t)
        p.per_bin_variance[t] = first + static_cast<double>(t) * sigma2 * nd;
    p.cross_covariance_12 = sigma2 * (nd + 1.0) / 2.0;
    p.asymptotic_coefficient = 4.0 / 3.0;  // bin 2, units of sigma^2 N
    return p;
}

CarouselRrwVariance predict_carousel_rrw(std::size_t n, double sigma2,
                                         PredictionMode mode) {
    if (n < 2)
        throw std::invalid_argument("predict_carousel_rrw: N >= 2 required");
    CarouselRrwVariance v;
    if (mode == PredictionMode::Asymptotic) {
        const double nd = static_cast<double>(n);
        v.sine_part = sigma2 * 3.0 * nd / (8.0 * kPi * kPi);
        v.cosine_part = sigma2 * nd / (8.0 * kPi * kPi);
    } else {
        const CoefficientVectors cv = CoefficientVectors::make(n);
        v.sine_part = sigma2 * suffix_quadratic_form(cv.s);
        v.cosine_part = sigma2 * suffix_quadratic_form(cv.c);
    }
    v.total = v.sine_part + v.cosine_part;
    return v;
}

double reduction_factor_rrw() {
    return 1.0 - (1.0 / (2.0 * kPi * kPi)) / (4.0 / 3.0);
}

std::vector<double> flicker_gain_trajectory(std::size_t n_max, double d,
                                            WeightKind kind,
                                            std::size_t n_period) {
    if (kind != WeightKind::Ones && n_period < 2)
        throw std::invalid_argument("flicker_gain_trajectory: N >= 2 required");
    const FractionalMatrix fm = flicker_coefficients(n_max, d);
    std::vector<double> out(n_max);
    double acc = 0.0;
    for (std::size_t t = 1; t <= n_max; ++t) {
        double w = 1.0;
        if (kind != WeightKind::Ones) {
            const double phi = 2.0 * kPi * static_cast<double>(1 + (t - 1) % n_period) /
                               static_cast<double>(n_period);
            w = kind == WeightKind::Sine ? std::sin(phi) : std::cos(phi);
        }
        acc += fm.coefficients[t - 1] * w;
        out[t - 1] = acc;
    }
    return out;
}

double exact_linear_variance(std::span<const double> weights, ProcessKind kind,
                             double sigma2, double d) {
    const std::size_t n = weights.size();
    if (n == 0)
        throw std::invalid_argument("exact_linear_variance: empty weights");
    switch (kind) {
        case ProcessKind::White:
            return sigma2 * kernels::sum_squares(weights);
        case ProcessKind::Rrw:
            return sigma2 * suffix_quadratic_form(weights);
        case ProcessKind::Flicker: {
            const FractionalMatrix fm = flicker_coefficients(n, d);
            const std::span<const double> coeff(fm.coefficients);
            // (F'w)_i = sum_{t >= i} c_{t-i} w_t
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double g = kernels::dot(coeff.first(n - i), weights.subspan(i));
                acc += g * g;
            }
            return sigma2 * acc;
        }
        case ProcessKind::Bias:
            throw std::invalid_argument(
                "exact_linear_variance: bias carries no stochastic variance");
    }
    throw std::invalid_argument("exact_linear_variance: unknown kind");
}

}  // namespace carousim
