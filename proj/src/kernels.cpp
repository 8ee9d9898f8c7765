#include "carousim/kernels.hpp"

#include <stdexcept>

#include "kernels_internal.hpp"

namespace carousim::kernels {
namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if CAROUSIM_HAVE_AVX2_BACKEND
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend g_backend = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;

const KernelTable& table() {
#if CAROUSIM_HAVE_AVX2_BACKEND
    if (g_backend == Backend::Avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

}  // namespace

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !cpu_has_avx2())
        throw std::runtime_error("kernels: AVX2 backend unavailable on this CPU");
    g_backend = b;
}

const char* backend_name() {
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("kernels::dot: length mismatch");
    return table().dot(a, b);
}

double sum(std::span<const double> a) { return table().sum(a); }

double sum_squares(std::span<const double> a) { return table().sum_squares(a); }

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    if (a.size() != b.size() || a.size() != out.size())
        throw std::invalid_argument("kernels::add: length mismatch");
    table().add(a, b, out);
}

void axpy(double alpha, std::span<const double> x, std::span<double> out) {
    if (x.size() != out.size())
        throw std::invalid_argument("kernels::axpy: length mismatch");
    table().axpy(alpha, x, out);
}

void scale(std::span<const double> a, double alpha, std::span<double> out) {
    if (a.size() != out.size())
        throw std::invalid_argument("kernels::scale: length mismatch");
    table().scale(a, alpha, out);
}

void cumsum(std::span<const double> a, std::span<double> out) {
    if (a.size() != out.size())
        throw std::invalid_argument("kernels::cumsum: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i];
        out[i] = acc;
    }
}

void convolve_prefix(std::span<const double> coeff, std::span<const double> x,
                     std::span<double> out) {
    if (coeff.size() != x.size() || x.size() != out.size())
        throw std::invalid_argument("kernels::convolve_prefix: length mismatch");
    table().convolve_prefix(coeff, x, out);
}

}  // namespace carousim::kernels
