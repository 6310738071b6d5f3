#pragma once

#include "moyal/kernels.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return a_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    bool is_hermitian(double tol = 1e-12) const;

    /// Copy into the leading block of an n x n zero matrix (n >= rows).
    CMat embedded(std::size_t n) const;
    /// Leading k x k block.
    CMat leading_block(std::size_t k) const;

    /// (A + A^dagger)/2
    CMat hermitian_part() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cplx s, CMat a);

/// A*B - B*A
CMat commutator(const CMat& a, const CMat& b);

/// Matrix-vector product.
std::vector<cplx> matvec(const CMat& a, const std::vector<cplx>& x);

cplx dot(const std::vector<cplx>& x, const std::vector<cplx>& y); // conj(x).y
double vec_norm(const std::vector<cplx>& x);

} // namespace moyal
