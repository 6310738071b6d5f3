#pragma once

#include "moyal/linalg.hpp"
#include "moyal/matrix.hpp"

#include <stdexcept>

namespace moyal {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Truncated-oscillator operator: a dense complex matrix on the first
/// `dim` oscillator levels, tagged with the deformation parameter theta.
struct FockOperator {
    std::size_t dim = 0;
    double theta = 1.0;
    CMat entries;

    FockOperator() = default;
    FockOperator(std::size_t d, double th) : dim(d), theta(th), entries(d, d) {}
    FockOperator(double th, CMat m)
        : dim(m.rows()), theta(th), entries(std::move(m))
    {
        if (entries.rows() != entries.cols())
            throw InvalidParameter("FockOperator: matrix not square");
    }

    bool hermitian(double tol = 1e-12) const { return entries.is_hermitian(tol); }

    FockOperator embedded(std::size_t n) const { return {theta, entries.embedded(n)}; }
    FockOperator leading_block(std::size_t k) const { return {theta, entries.leading_block(k)}; }
};

/// Elements live at store_dim; commutators and norms are evaluated after
/// embedding into store_dim + pad and read back on the leading block.
struct TruncationPolicy {
    std::size_t store_dim = 128;
    std::size_t pad = 4;

    void validate() const
    {
        if (store_dim < 2)
            throw InvalidParameter("TruncationPolicy: store_dim must be >= 2");
        if (pad < 2)
            throw InvalidParameter("TruncationPolicy: pad must be >= 2");
    }
    std::size_t work_dim() const { return store_dim + pad; }
};

void check_compatible(const FockOperator& a, const FockOperator& b);

FockOperator make_annihilation(std::size_t dim, double theta);
FockOperator make_creation(std::size_t dim, double theta);
FockOperator make_number(std::size_t dim, double theta);
FockOperator make_identity(std::size_t dim, double theta);

double operator_norm(const FockOperator& f);
FockOperator matrix_exponential(const FockOperator& f);

FockOperator commutator(const FockOperator& a, const FockOperator& b);

enum class Ladder { annihilation, creation };

/// [a, F] or [a*, F] under the padding policy: F is embedded to
/// dim + pad, the ladder operator is built at the padded dimension, and
/// the commutator is read back on the leading dim x dim block.
FockOperator ladder_commutator(Ladder which, const FockOperator& f, std::size_t pad = 4);

} // namespace moyal
