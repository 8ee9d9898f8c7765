// Reference implementations. Kept branch-free and obvious; the AVX2 variants
// are checked against these.
#include "kernels_internal.hpp"

namespace carousim::kernels::detail {
namespace {

double dot_scalar(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v;
    return acc;
}

double sum_squares_scalar(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return acc;
}

void add_scalar(std::span<const double> a, std::span<const double> b,
                std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
}

void axpy_scalar(double alpha, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
}

void scale_scalar(std::span<const double> a, double alpha, std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i];
}

// out[t] = sum_{i<=t} coeff[t-i] x[i], written as n shifted axpys so both
// operands stream contiguously.
void convolve_prefix_scalar(std::span<const double> coeff,
                            std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    for (std::size_t t = 0; t < n; ++t) out[t] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        axpy_scalar(x[i], coeff.first(n - i), out.subspan(i));
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{dot_scalar,  sum_scalar,   sum_squares_scalar,
                                   add_scalar,  axpy_scalar,  scale_scalar,
                                   convolve_prefix_scalar};
    return table;
}

}  // namespace carousim::kernels::detail
