#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel inner loops on interleaved complex<double> arrays.
// A scalar reference implementation is always available; an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The two are
// equivalence-tested against each other.

namespace moyal::kern {

using cplx = std::complex<double>;

struct Kernels {
    const char* name;
    // C += A * B, row-major: A is m x k, B is k x n, C is m x n.
    void (*gemm_acc)(std::size_t m, std::size_t k, std::size_t n,
                     const cplx* A, const cplx* B, cplx* C);
    // y += a * x
    void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    // x *= a
    void (*scal)(std::size_t n, cplx a, cplx* x);
    // sum of |x_i|^2
    double (*nrm2sq)(std::size_t n, const cplx* x);
};

const Kernels& scalar_kernels();

#ifdef __x86_64__
const Kernels& avx2_kernels();
bool avx2_supported();
#endif

// Active kernel set: chosen once from CPU features, overridable with the
// MOYAL_KERNELS environment variable ("scalar" or "avx2").
const Kernels& active();

// Lookup by name; nullptr if the variant is unknown or unsupported here.
const Kernels* by_name(std::string_view name);

} // namespace moyal::kern
