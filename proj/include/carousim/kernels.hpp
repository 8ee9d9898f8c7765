// Arithmetic inner loops used throughout the library. Every kernel has a
// scalar reference implementation and, on x86-64 with AVX2+FMA, a vectorized
// variant selected at runtime. The two are equivalence-tested; callers never
// care which one runs.
#pragma once

#include <cstddef>
#include <span>

namespace carousim::kernels {

enum class Backend { Scalar, Avx2 };

// Backend picked at startup from CPU features. force_backend() overrides it
// (testing hook; Avx2 is refused when the CPU lacks it).
Backend active_backend();
void force_backend(Backend b);
const char* backend_name();

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

double sum(std::span<const double> a);
double sum_squares(std::span<const double> a);

// out[i] = a[i] + b[i]; aliasing with `out` is allowed.
void add(std::span<const double> a, std::span<const double> b, std::span<double> out);

// out[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> out);

// out[i] = alpha * a[i]
void scale(std::span<const double> a, double alpha, std::span<double> out);

// Running cumulative sum (inherently sequential; scalar on every backend).
void cumsum(std::span<const double> a, std::span<double> out);

// Causal convolution prefix: out[t] = sum_{i<=t} coeff[t-i] * x[i].
// coeff, x and out all have length n. O(n^2); the transform-based
// alternative lives in the noise module.
void convolve_prefix(std::span<const double> coeff, std::span<const double> x,
                     std::span<double> out);

}  // namespace carousim::kernels
