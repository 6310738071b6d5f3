#include "moyal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace moyal::linalg {

namespace {

lapack_complex_double* lp(cplx* p)
{
    return reinterpret_cast<lapack_complex_double*>(p);
}

} // namespace

HermEig hermitian_eig(const CMat& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitian_eig: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    // zheev works on column-major data; a Hermitian matrix equals the
    // conjugate of its transpose, so pass conj(A) as the column-major image.
    CMat work = a.conj();
    std::vector<double> w(a.rows());
    lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', n,
                                    lp(work.data()), n, w.data());
    if (info != 0)
        throw std::runtime_error("zheev failed, info=" + std::to_string(info));
    // work now holds eigenvectors column-major; vectors(i,j) = work[j*n+i].
    CMat vecs(a.rows(), a.rows());
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            vecs(i, j) = work.data()[j * a.rows() + i];
    return {std::move(w), std::move(vecs)};
}

std::vector<double> hermitian_eigenvalues(const CMat& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    CMat work = a.conj();
    std::vector<double> w(a.rows());
    lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'U', n,
                                    lp(work.data()), n, w.data());
    if (info != 0)
        throw std::runtime_error("zheev failed, info=" + std::to_string(info));
    return w;
}

double operator_norm(const CMat& a)
{
    if (a.size() == 0) return 0.0;
    CMat gram = a.adjoint() * a;
    std::vector<double> w = hermitian_eigenvalues(gram);
    double top = w.empty() ? 0.0 : w.back();
    return std::sqrt(std::max(0.0, top));
}

SingularTriple top_singular(const CMat& a, const std::vector<cplx>* warm_v,
                            double rel_tol, int max_iter)
{
    const std::size_t n = a.cols();
    CMat ah = a.adjoint();
    std::vector<cplx> v(n, cplx{0.0, 0.0});
    if (warm_v && warm_v->size() == n && vec_norm(*warm_v) > 0) {
        v = *warm_v;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            v[i] = cplx{1.0 / std::sqrt(double(n)), 1e-3 * double(i % 7)};
    }
    double nv = vec_norm(v);
    for (auto& c : v) c /= nv;

    double sigma2 = 0.0, prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<cplx> av = matvec(a, v);
        std::vector<cplx> w = matvec(ah, av);
        sigma2 = vec_norm(w); // |A^H A v| ~ sigma^2 for normalized v
        if (sigma2 == 0.0) break;
        for (auto& c : w) c /= sigma2;
        v = std::move(w);
        if (prev >= 0 && std::abs(sigma2 - prev) <= rel_tol * sigma2)
            break;
        prev = sigma2;
    }
    if (sigma2 == 0.0)
        return {0.0, std::vector<cplx>(a.rows(), cplx{0, 0}), v};
    std::vector<cplx> av = matvec(a, v);
    double sigma = vec_norm(av);
    for (auto& c : av) c /= (sigma > 0 ? sigma : 1.0);
    return {sigma, std::move(av), std::move(v)};
}

CMat solve(const CMat& a, const CMat& b)
{
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    const lapack_int nrhs = static_cast<lapack_int>(b.cols());
    // Column-major images: solve A^T-free by transposing in and out.
    CMat at = a.transpose(); // row-major transpose == column-major A
    CMat bt = b.transpose();
    std::vector<lapack_int> ipiv(a.rows());
    lapack_int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, nrhs,
                                    lp(at.data()), n, ipiv.data(),
                                    lp(bt.data()), n);
    if (info != 0)
        throw std::runtime_error("zgesv failed, info=" + std::to_string(info));
    return bt.transpose();
}

namespace {

double one_norm(const CMat& a)
{
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

} // namespace

CMat expm(const CMat& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("expm: matrix not square");
    if (!a.all_finite())
        throw std::invalid_argument("expm: non-finite entries");

    const std::size_t n = a.rows();
    const double theta13 = 5.371920351148152; // Pade(13) threshold (Higham)
    double nrm = one_norm(a);
    int squarings = 0;
    CMat as = a;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        as *= cplx{std::ldexp(1.0, -squarings), 0.0};
    }

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};

    CMat a2 = as * as;
    CMat a4 = a2 * a2;
    CMat a6 = a2 * a4;
    CMat id = CMat::identity(n);

    CMat u_inner = cplx{b[13], 0} * a6 + cplx{b[11], 0} * a4 + cplx{b[9], 0} * a2;
    CMat u = as * (a6 * u_inner +
                   cplx{b[7], 0} * a6 + cplx{b[5], 0} * a4 + cplx{b[3], 0} * a2 +
                   cplx{b[1], 0} * id);
    CMat v_inner = cplx{b[12], 0} * a6 + cplx{b[10], 0} * a4 + cplx{b[8], 0} * a2;
    CMat v = a6 * v_inner +
             cplx{b[6], 0} * a6 + cplx{b[4], 0} * a4 + cplx{b[2], 0} * a2 +
             cplx{b[0], 0} * id;

    CMat r = solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i)
        r = r * r;
    return r;
}

} // namespace moyal::linalg
