#include "carousim/noise.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include "carousim/kernels.hpp"

namespace carousim {

const char* to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::Bias: return "bias";
        case ProcessKind::White: return "white";
        case ProcessKind::Rrw: return "rrw";
        case ProcessKind::Flicker: return "flicker";
    }
    return "?";
}

ProcessKind process_kind_from_string(const std::string& s) {
    if (s == "bias") return ProcessKind::Bias;
    if (s == "white") return ProcessKind::White;
    if (s == "rrw") return ProcessKind::Rrw;
    if (s == "flicker") return ProcessKind::Flicker;
    throw std::invalid_argument("unknown process kind: " + s);
}

void validate(const ProcessSpec& spec) {
    if (spec.kind == ProcessKind::Bias) {
        if (!std::isfinite(spec.bias_value))
            throw std::invalid_argument("ProcessSpec: bias_value must be finite");
        return;
    }
    if (!(spec.variance >= 0.0) || !std::isfinite(spec.variance))
        throw std::invalid_argument("ProcessSpec: variance must be finite and >= 0");
    if (spec.kind == ProcessKind::Flicker) {
        if (!(spec.d > 0.0 && spec.d < 1.0))
            throw std::invalid_argument("ProcessSpec: flicker requires 0 < d < 1");
    } else if (spec.d != 0.0) {
        throw std::invalid_argument("ProcessSpec: d only applies to flicker");
    }
}

FractionalMatrix flicker_coefficients(std::size_t n, double d) {
    if (n < 1) throw std::invalid_argument("flicker_coefficients: n >= 1 required");
    if (!(d > 0.0 && d < 1.0))
        throw std::invalid_argument("flicker_coefficients: d in (0,1) required");
    FractionalMatrix fm;
    fm.n = n;
    fm.coefficients.resize(n);
    fm.coefficients[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k)
        fm.coefficients[k] =
            fm.coefficients[k - 1] * (static_cast<double>(k) - 1.0 + d) /
            static_cast<double>(k);
    return fm;
}

std::vector<double> FractionalMatrix::dense() const {
    if (n > 4096)
        throw std::invalid_argument("FractionalMatrix::dense: n too large");
    std::vector<double> f(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c <= r; ++c) f[r * n + c] = coefficients[r - c];
    return f;
}

namespace {

std::vector<double> gaussian_vector(std::size_t n, double variance, Seed seed) {
    if (n < 1) throw std::invalid_argument("generator: n >= 1 required");
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("generator: variance must be finite and >= 0");
    std::vector<double> v(n, 0.0);
    if (variance == 0.0) return v;
    Rng rng(seed);
    const double sigma = std::sqrt(variance);
    for (double& x : v) x = sigma * rng.gaussian();
    return v;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// FFTW plans cached per transform size. FFTW planning is not thread-safe,
// so all use is serialized; execution cost dominates planning anyway.
class FftConvolver {
public:
    static FftConvolver& instance() {
        static FftConvolver c;
        return c;
    }

    // Linear (causal) convolution of two length-n sequences, truncated to n.
    std::vector<double> convolve(std::span<const double> a,
                                 std::span<const double> b) {
        std::lock_guard<std::mutex> lock(mutex_);
        const std::size_t n = a.size();
        const std::size_t m = next_pow2(2 * n);  // zero padding, no wraparound
        Plans& p = plans(m);
        std::vector<std::complex<double>> fa = forward(p, a, m);
        std::vector<std::complex<double>> fb = forward(p, b, m);
        for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
        std::copy(fa.begin(), fa.end(),
                  reinterpret_cast<std::complex<double>*>(p.freq));
        fftw_execute(p.backward);
        std::vector<double> out(n);
        const double inv = 1.0 / static_cast<double>(m);
        for (std::size_t i = 0; i < n; ++i) out[i] = p.real[i] * inv;
        return out;
    }

private:
    struct Plans {
        std::size_t m = 0;
        double* real = nullptr;
        fftw_complex* freq = nullptr;
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
    };

    Plans& plans(std::size_t m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        Plans p;
        p.m = m;
        p.real = fftw_alloc_real(m);
        p.freq = fftw_alloc_complex(m / 2 + 1);
        p.forward = fftw_plan_dft_r2c_1d(static_cast<int>(m), p.real, p.freq,
                                         FFTW_ESTIMATE);
        p.backward = fftw_plan_dft_c2r_1d(static_cast<int>(m), p.freq, p.real,
                                          FFTW_ESTIMATE);
        return cache_.emplace(m, p).first->second;
    }

    std::vector<std::complex<double>> forward(Plans& p,
                                              std::span<const double> x,
                                              std::size_t m) {
        std::copy(x.begin(), x.end(), p.real);
        std::fill(p.real + x.size(), p.real + m, 0.0);
        fftw_execute(p.forward);
        const auto* f = reinterpret_cast<const std::complex<double>*>(p.freq);
        return std::vector<std::complex<double>>(f, f + m / 2 + 1);
    }

    std::mutex mutex_;
    std::map<std::size_t, Plans> cache_;
};

}  // namespace

SampleSeries gen_white(std::size_t n, double variance, Seed seed,
                       double sample_interval) {
    return SampleSeries{gaussian_vector(n, variance, seed), sample_interval,
                        "white"};
}

SampleSeries gen_rrw(std::size_t n, double variance, Seed seed,
                     double sample_interval) {
    std::vector<double> q = gaussian_vector(n, variance, seed);
    std::vector<double> r(n);
    kernels::cumsum(q, r);
    return SampleSeries{std::move(r), sample_interval, "rrw"};
}

SampleSeries gen_bias(std::size_t n, double bias_value, double sample_interval) {
    if (n < 1) throw std::invalid_argument("gen_bias: n >= 1 required");
    if (!std::isfinite(bias_value))
        throw std::invalid_argument("gen_bias: bias_value must be finite");
    return SampleSeries{std::vector<double>(n, bias_value), sample_interval,
                        "bias"};
}

std::vector<double> fractional_integrate(std::span<const double> driving, double d,
                                         ConvolutionPath path) {
    const std::size_t n = driving.size();
    const FractionalMatrix fm = flicker_coefficients(n, d);
    if (path == ConvolutionPath::Auto)
        path = n >= 512 ? ConvolutionPath::Fft : ConvolutionPath::Direct;
    if (path == ConvolutionPath::Fft)
        return FftConvolver::instance().convolve(fm.coefficients, driving);
    std::vector<double> out(n);
    kernels::convolve_prefix(fm.coefficients, driving, out);
    return out;
}

SampleSeries gen_flicker(std::size_t n, double variance, double d, Seed seed,
                         ConvolutionPath path, double sample_interval) {
    if (!(d > 0.0 && d < 1.0))
        throw std::invalid_argument("gen_flicker: d in (0,1) required");
    std::vector<double> w = gaussian_vector(n, variance, seed);
    return SampleSeries{fractional_integrate(w, d, path), sample_interval,
                        "flicker"};
}

SampleSeries compose_error(std::span<const ProcessSpec> specs, std::size_t n,
                           Seed seed, double sample_interval) {
    if (specs.empty())
        throw std::invalid_argument("compose_error: at least one spec required");
    for (const ProcessSpec& s : specs) validate(s);
    std::vector<double> acc(n, 0.0);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const ProcessSpec& s = specs[i];
        const Seed sub = substream(seed, i);
        SampleSeries part;
        switch (s.kind) {
            case ProcessKind::Bias: part = gen_bias(n, s.bias_value); break;
            case ProcessKind::White: part = gen_white(n, s.variance, sub); break;
            case ProcessKind::Rrw: part = gen_rrw(n, s.variance, sub); break;
            case ProcessKind::Flicker:
                part = gen_flicker(n, s.variance, s.d, sub);
                break;
        }
        kernels::add(acc, part.values, acc);
    }
    return SampleSeries{std::move(acc), sample_interval, "composed"};
}

}  // namespace carousim
