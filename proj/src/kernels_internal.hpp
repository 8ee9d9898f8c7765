// Shared between the kernel backends and the dispatcher. Not installed.
#pragma once

#include <cstddef>
#include <span>

namespace carousim::kernels::detail {

struct KernelTable {
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*sum)(std::span<const double>);
    double (*sum_squares)(std::span<const double>);
    void (*add)(std::span<const double>, std::span<const double>, std::span<double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*scale)(std::span<const double>, double, std::span<double>);
    void (*convolve_prefix)(std::span<const double>, std::span<const double>,
                            std::span<double>);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define CAROUSIM_HAVE_AVX2_BACKEND 1
const KernelTable& avx2_table();
#else
#define CAROUSIM_HAVE_AVX2_BACKEND 0
#endif

}  // namespace carousim::kernels::detail
