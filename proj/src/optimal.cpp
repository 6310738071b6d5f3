#include "moyal/optimal.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace moyal {

MoyalElement f_beta(double beta, double xi, std::size_t dim, double theta)
{
    if (!(beta > 0.0))
        throw InvalidParameter("f_beta: beta must be > 0");
    FockOperator a = make_annihilation(dim, theta);
    // a e^{-(beta/theta) n} has entries a[m][m+1] * e^{-beta(m+1)}.
    CMat damped = a.entries;
    for (std::size_t m = 0; m + 1 < dim; ++m)
        damped(m, m + 1) *= std::exp(-beta * double(m + 1));
    const cplx phase = std::exp(cplx{0.0, -xi});
    damped *= phase / std::sqrt(2.0);
    CMat op = damped + damped.adjoint();
    return MoyalElement({theta, std::move(op)}, {0.0, 0.0});
}

FockOperator c_beta_matrix(double beta, std::size_t dim)
{
    if (!(beta > 0.0))
        throw InvalidParameter("c_beta_matrix: beta must be > 0");
    const double em = std::exp(-beta);
    const double ep = std::exp(beta);
    FockOperator c(dim, 1.0);
    for (std::size_t n = 0; n < dim; ++n) {
        const double ebn = std::exp(-beta * double(n));
        c.entries(n, n) = (em - (1.0 - em) * double(n)) * ebn;
        if (n >= 2)
            c.entries(n - 2, n) =
                -ep * (1.0 - em) * std::sqrt(double(n) * double(n - 1)) * ebn;
    }
    return c;
}

namespace {

void schur_sums(double beta, std::size_t dim, double& row_sup, double& col_sup)
{
    const double em = std::exp(-beta);
    const double ep = std::exp(beta);
    auto diag = [&](std::size_t n) {
        return std::abs((em - (1.0 - em) * double(n)) * std::exp(-beta * double(n)));
    };
    auto off = [&](std::size_t n) { // |c_{n-2,n}| for n >= 2
        return ep * (1.0 - em) * std::sqrt(double(n) * double(n - 1)) *
               std::exp(-beta * double(n));
    };

    row_sup = col_sup = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        // row n: entries (n,n) and (n,n+2)
        double row = diag(n) + off(n + 2);
        // column n: entries (n,n) and (n-2,n)
        double col = diag(n) + (n >= 2 ? off(n) : 0.0);
        row_sup = std::max(row_sup, row);
        col_sup = std::max(col_sup, col);
    }
}

void check_schur_args(const char* who, double beta, std::size_t dim)
{
    if (!(beta > 0.0))
        throw InvalidParameter(std::string(who) + ": beta must be > 0");
    if (double(dim) <= 2.0 / beta + 2.0)
        throw InsufficientTruncation(std::string(who) +
                                     ": need dim > 2/beta + 2");
}

} // namespace

SchurCertificate schur_certificate(double beta, std::size_t dim)
{
    check_schur_args("schur_certificate", beta, dim);

    SchurCertificate cert;
    cert.beta = beta;
    schur_sums(beta, dim, cert.row_sup, cert.col_sup);
    cert.schur_bound = std::sqrt(cert.row_sup * cert.col_sup);
    // The banded singular-value iteration matches the dense operator norm
    // but stays O(dim) per step, which matters at small beta (dim ~ 2/beta).
    cert.exact_norm = c_beta_norm(beta, dim);
    return cert;
}

double schur_bound(double beta, std::size_t dim)
{
    check_schur_args("schur_bound", beta, dim);
    double row_sup, col_sup;
    schur_sums(beta, dim, row_sup, col_sup);
    return std::sqrt(row_sup * col_sup);
}

double c_beta_norm(double beta, std::size_t dim)
{
    check_schur_args("c_beta_norm", beta, dim);
    const double em = std::exp(-beta);
    const double ep = std::exp(beta);
    std::vector<double> d(dim), o(dim); // o[n] = c(n-2, n), n >= 2
    for (std::size_t n = 0; n < dim; ++n) {
        const double ebn = std::exp(-beta * double(n));
        d[n] = (em - (1.0 - em) * double(n)) * ebn;
        o[n] = (n >= 2) ? -ep * (1.0 - em) *
                              std::sqrt(double(n) * double(n - 1)) * ebn
                        : 0.0;
    }
    auto mv = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t n = 0; n < dim; ++n) {
            double v = d[n] * x[n];
            if (n + 2 < dim)
                v += o[n + 2] * x[n + 2];
            y[n] = v;
        }
    };
    auto mtv = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t n = 0; n < dim; ++n) {
            double v = d[n] * x[n];
            if (n >= 2)
                v += o[n] * x[n - 2];
            y[n] = v;
        }
    };
    std::vector<double> v(dim), w(dim), z(dim);
    for (std::size_t n = 0; n < dim; ++n)
        v[n] = 1.0 / std::sqrt(double(dim)) * (1.0 + 0.1 * double(n % 7));
    double s2 = 0.0, prev = -1.0;
    for (int it = 0; it < 2000; ++it) {
        mv(v, w);
        mtv(w, z);
        s2 = 0.0;
        for (double x : z)
            s2 += x * x;
        s2 = std::sqrt(s2);
        if (s2 == 0.0)
            return 0.0;
        for (std::size_t n = 0; n < dim; ++n)
            v[n] = z[n] / s2;
        if (prev >= 0.0 && std::abs(s2 - prev) <= 1e-13 * s2)
            break;
        prev = s2;
    }
    return std::sqrt(s2);
}

double lambert_w(double x)
{
    const double inv_e = -std::exp(-1.0);
    if (x < inv_e)
        throw InvalidParameter("lambert_w: argument below -1/e");
    if (x == 0.0)
        return 0.0;
    double w = x * std::exp(1.0); // valid start near the branch point
    for (int i = 0; i < 50; ++i) {
        double ew = std::exp(w);
        double resid = w * ew - x;
        if (std::abs(resid) <= 1e-14)
            break;
        w -= resid / (ew * (1.0 + w));
    }
    return w;
}

BetaThresholds beta_thresholds()
{
    BetaThresholds t;
    t.beta0 = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    t.beta1 = std::log((std::sqrt(1.0 + 4.0 * std::exp(1.0)) - 1.0) / 2.0);
    t.beta2 = 2.0 + lambert_w(-2.0 * std::exp(-2.0));
    t.gamma = std::min(t.beta1, t.beta2);
    return t;
}

double pythagoras_lambda_max(double d1, double lambda)
{
    return 1.0 / (lambda * std::sqrt(d1 * d1 * lambda * lambda + 1.0));
}

double pythagoras_scale(double d1, double lambda)
{
    return lambda * d1 / std::sqrt(lambda * lambda * d1 * d1 + 1.0);
}

DoubleElement pythagoras_witness(double d1, double lambda, const MoyalElement& f1,
                                 std::size_t pad, double certified_l1)
{
    if (!(d1 >= 0.0) || !(lambda > 0.0))
        throw InvalidParameter("pythagoras_witness: need d1 >= 0 and Lambda > 0");
    const double l1 =
        certified_l1 >= 0.0 ? certified_l1 : lipschitz_seminorm(f1, pad);
    if (l1 > 1.0 + 1e-8)
        throw InvalidWitness("pythagoras_witness: f1 outside the Lipschitz ball");
    MoyalElement f = f1.scaled({pythagoras_scale(d1, lambda), 0.0});
    MoyalElement g = f;
    g.unit_part += pythagoras_lambda_max(d1, lambda);
    return DoubleElement(std::move(f), std::move(g), lambda);
}

} // namespace moyal
