#include "moyal/kernels.hpp"

#ifdef __x86_64__

#include <immintrin.h>

namespace moyal::kern {

namespace {

// Complex multiply of a broadcast scalar a = x+iy against two packed
// complex doubles b = [r0,i0,r1,i1]:
//   a*b = [x r - y i, x i + y r]  per lane pair.
inline __m256d cmul_bcast(__m256d xv, __m256d yv, __m256d b)
{
    __m256d bswap = _mm256_permute_pd(b, 0x5); // [i0,r0,i1,r1]
    return _mm256_fmaddsub_pd(xv, b, _mm256_mul_pd(yv, bswap));
}

void gemm_acc_avx2(std::size_t m, std::size_t k, std::size_t n,
                   const cplx* A, const cplx* B, cplx* C)
{
    const std::size_t n2 = n & ~std::size_t(1); // pairs of complex
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = A + i * k;
        double* crow = reinterpret_cast<double*>(C + i * n);
        for (std::size_t p = 0; p < k; ++p) {
            const cplx a = arow[p];
            if (a == cplx{0.0, 0.0}) continue;
            const __m256d xv = _mm256_set1_pd(a.real());
            const __m256d yv = _mm256_set1_pd(a.imag());
            const double* brow = reinterpret_cast<const double*>(B + p * n);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                __m256d b = _mm256_loadu_pd(brow + 2 * j);
                __m256d c = _mm256_loadu_pd(crow + 2 * j);
                c = _mm256_add_pd(c, cmul_bcast(xv, yv, b));
                _mm256_storeu_pd(crow + 2 * j, c);
            }
            for (; j < n; ++j) {
                cplx* cj = reinterpret_cast<cplx*>(crow) + j;
                const cplx* bj = reinterpret_cast<const cplx*>(brow) + j;
                *cj += a * *bj;
            }
        }
    }
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y)
{
    const __m256d xv = _mm256_set1_pd(a.real());
    const __m256d yv = _mm256_set1_pd(a.imag());
    const std::size_t n2 = n & ~std::size_t(1);
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        __m256d b = _mm256_loadu_pd(xd + 2 * i);
        __m256d c = _mm256_loadu_pd(yd + 2 * i);
        c = _mm256_add_pd(c, cmul_bcast(xv, yv, b));
        _mm256_storeu_pd(yd + 2 * i, c);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

void scal_avx2(std::size_t n, cplx a, cplx* x)
{
    const __m256d xv = _mm256_set1_pd(a.real());
    const __m256d yv = _mm256_set1_pd(a.imag());
    const std::size_t n2 = n & ~std::size_t(1);
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        __m256d b = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(xd + 2 * i, cmul_bcast(xv, yv, b));
    }
    for (; i < n; ++i)
        x[i] *= a;
}

double nrm2sq_avx2(std::size_t n, const cplx* x)
{
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n2 = n & ~std::size_t(1);
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        __m256d v = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace

const Kernels& avx2_kernels()
{
    static const Kernels k{"avx2", gemm_acc_avx2, axpy_avx2,
                           scal_avx2, nrm2sq_avx2};
    return k;
}

bool avx2_supported()
{
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace moyal::kern

#endif // __x86_64__
