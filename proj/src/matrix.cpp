#include "moyal/matrix.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace moyal {

CMat CMat::identity(std::size_t n)
{
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMat& CMat::operator+=(const CMat& o)
{
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kern::active().axpy(a_.size(), cplx{1.0, 0.0}, o.a_.data(), a_.data());
    return *this;
}

CMat& CMat::operator-=(const CMat& o)
{
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kern::active().axpy(a_.size(), cplx{-1.0, 0.0}, o.a_.data(), a_.data());
    return *this;
}

CMat& CMat::operator*=(cplx s)
{
    kern::active().scal(a_.size(), s, a_.data());
    return *this;
}

CMat CMat::adjoint() const
{
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMat CMat::transpose() const
{
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

CMat CMat::conj() const
{
    CMat m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = std::conj(a_[i]);
    return m;
}

cplx CMat::trace() const
{
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

double CMat::frobenius_norm() const
{
    return std::sqrt(kern::active().nrm2sq(a_.size(), a_.data()));
}

double CMat::max_abs() const
{
    double m = 0.0;
    for (const cplx& v : a_)
        m = std::max(m, std::abs(v));
    return m;
}

bool CMat::all_finite() const
{
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

bool CMat::is_hermitian(double tol) const
{
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                return false;
    return true;
}

CMat CMat::embedded(std::size_t n) const
{
    if (n < rows_ || n < cols_)
        throw std::invalid_argument("embedded: target dimension too small");
    CMat m(n, n);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j);
    return m;
}

CMat CMat::leading_block(std::size_t k) const
{
    if (k > rows_ || k > cols_)
        throw std::invalid_argument("leading_block: block larger than matrix");
    CMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m(i, j) = (*this)(i, j);
    return m;
}

CMat CMat::hermitian_part() const
{
    CMat m = adjoint();
    m += *this;
    m *= cplx{0.5, 0.0};
    return m;
}

CMat operator+(CMat a, const CMat& b) { a += b; return a; }
CMat operator-(CMat a, const CMat& b) { a -= b; return a; }

CMat operator*(const CMat& a, const CMat& b)
{
    assert(a.cols() == b.rows());
    CMat c(a.rows(), b.cols());
    kern::active().gemm_acc(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

CMat operator*(cplx s, CMat a) { a *= s; return a; }

CMat commutator(const CMat& a, const CMat& b)
{
    return a * b - b * a;
}

std::vector<cplx> matvec(const CMat& a, const std::vector<cplx>& x)
{
    assert(a.cols() == x.size());
    std::vector<cplx> y(a.rows());
    kern::active().gemm_acc(a.rows(), a.cols(), 1, a.data(), x.data(), y.data());
    return y;
}

cplx dot(const std::vector<cplx>& x, const std::vector<cplx>& y)
{
    assert(x.size() == y.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::conj(x[i]) * y[i];
    return s;
}

double vec_norm(const std::vector<cplx>& x)
{
    return std::sqrt(kern::active().nrm2sq(x.size(), x.data()));
}

} // namespace moyal
