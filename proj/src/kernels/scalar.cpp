#include "moyal/kernels.hpp"

namespace moyal::kern {

namespace {

void gemm_acc_scalar(std::size_t m, std::size_t k, std::size_t n,
                     const cplx* A, const cplx* B, cplx* C)
{
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = A + i * k;
        cplx* crow = C + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx a = arow[p];
            if (a == cplx{0.0, 0.0}) continue;
            const cplx* brow = B + p * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += a * brow[j];
        }
    }
}

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

void scal_scalar(std::size_t n, cplx a, cplx* x)
{
    for (std::size_t i = 0; i < n; ++i)
        x[i] *= a;
}

double nrm2sq_scalar(std::size_t n, const cplx* x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace

const Kernels& scalar_kernels()
{
    static const Kernels k{"scalar", gemm_acc_scalar, axpy_scalar,
                           scal_scalar, nrm2sq_scalar};
    return k;
}

} // namespace moyal::kern
