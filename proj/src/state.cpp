#include "moyal/state.hpp"

#include <json.hpp>

#include <cmath>

namespace moyal {

void MixedState::validate(double tol) const
{
    if (components.empty())
        throw InvalidParameter("MixedState: no components");
    double wsum = 0.0;
    const std::size_t d = components.front().vector.size();
    for (const auto& c : components) {
        if (c.weight < 0.0)
            throw InvalidParameter("MixedState: negative weight");
        if (c.vector.size() != d)
            throw InvalidParameter("MixedState: inconsistent component dims");
        wsum += c.weight;
        double n = vec_norm(c.vector);
        if (std::abs(n - 1.0) > tol)
            throw InvalidParameter("MixedState: component vector not normalized");
    }
    if (std::abs(wsum - 1.0) > tol)
        throw InvalidParameter("MixedState: weights do not sum to 1");
}

MixedState coherent_state(cplx kappa, std::size_t dim, double theta)
{
    if (dim < 2)
        throw InvalidParameter("coherent_state: dim must be >= 2");
    if (!(theta > 0.0))
        throw InvalidParameter("coherent_state: theta must be > 0");

    std::vector<cplx> v(dim);
    // c_m = e^{-|k|^2/2theta} kappa^m / sqrt(m! theta^m), built recursively.
    cplx c = std::exp(-std::norm(kappa) / (2.0 * theta));
    v[0] = c;
    for (std::size_t m = 1; m < dim; ++m) {
        c *= kappa / std::sqrt(theta * double(m));
        v[m] = c;
    }
    double kept = kern::active().nrm2sq(dim, v.data());
    double tail = std::max(0.0, 1.0 - kept);
    if (tail >= 1e-4)
        throw TruncationOverflow("coherent_state: dropped tail mass " +
                                 std::to_string(tail));
    double n = std::sqrt(kept);
    for (auto& x : v) x /= n;

    MixedState phi;
    phi.theta = theta;
    phi.components.push_back({1.0, std::move(v)});
    phi.accuracy_warning = tail >= 1e-10;
    return phi;
}

MixedState eigenstate(std::size_t n, std::size_t dim, double theta, std::size_t pad)
{
    if (n + pad >= dim)
        throw InvalidParameter("eigenstate: level out of range for this truncation");
    std::vector<cplx> v(dim);
    v[n] = 1.0;
    MixedState phi;
    phi.theta = theta;
    phi.components.push_back({1.0, std::move(v)});
    return phi;
}

MixedState translate_state(const MixedState& phi, cplx kappa, std::size_t pad)
{
    if (kappa == cplx{0.0, 0.0})
        return phi;
    const std::size_t d = phi.dim();
    const std::size_t wd = d + pad;
    FockOperator u = displacement_unitary(kappa, wd, phi.theta);
    CMat udag = u.entries.adjoint();

    MixedState out;
    out.theta = phi.theta;
    out.accuracy_warning = phi.accuracy_warning;
    for (const auto& c : phi.components) {
        std::vector<cplx> big(wd, cplx{0.0, 0.0});
        std::copy(c.vector.begin(), c.vector.end(), big.begin());
        std::vector<cplx> moved = matvec(udag, big);
        moved.resize(d);
        double n = vec_norm(moved);
        if (n < 0.5)
            throw TruncationOverflow("translate_state: translated vector lost "
                                     "most of its mass to the truncation");
        if (1.0 - n * n >= 1e-10)
            out.accuracy_warning = true;
        for (auto& x : moved) x /= n;
        out.components.push_back({c.weight, std::move(moved)});
    }
    return out;
}

cplx evaluate(const MixedState& phi, const MoyalElement& f)
{
    if (phi.dim() != f.dim())
        throw InvalidPair("evaluate: state/element dimension mismatch");
    if (phi.theta != f.theta())
        throw InvalidPair("evaluate: state/element theta mismatch");
    cplx s = 0.0;
    for (const auto& c : phi.components)
        s += c.weight * dot(c.vector, matvec(f.op.entries, c.vector));
    return s + f.unit_part; // weights sum to 1
}

cplx evaluate(const MixedState& phi, const FockOperator& f)
{
    return evaluate(phi, MoyalElement(f));
}

double state_overlap(const MixedState& a, const MixedState& b)
{
    if (a.components.size() != b.components.size() || a.dim() != b.dim())
        return 0.0;
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        s += a.components[i].weight *
             std::abs(dot(a.components[i].vector, b.components[i].vector));
        w += a.components[i].weight;
    }
    return w > 0 ? s / w : 0.0;
}

CMat density_matrix(const MixedState& phi)
{
    const std::size_t d = phi.dim();
    CMat rho(d, d);
    for (const auto& c : phi.components)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                rho(i, j) += c.weight * c.vector[i] * std::conj(c.vector[j]);
    return rho;
}

std::string state_to_json(const MixedState& phi)
{
    nlohmann::ordered_json j;
    j["theta"] = phi.theta;
    j["components"] = nlohmann::ordered_json::array();
    for (const auto& c : phi.components) {
        nlohmann::ordered_json jc;
        jc["weight"] = c.weight;
        std::vector<double> re, im;
        re.reserve(c.vector.size());
        im.reserve(c.vector.size());
        for (const cplx& x : c.vector) {
            re.push_back(x.real());
            im.push_back(x.imag());
        }
        jc["re"] = re;
        jc["im"] = im;
        j["components"].push_back(jc);
    }
    return j.dump(2);
}

MixedState state_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    MixedState phi;
    phi.theta = j.at("theta").get<double>();
    for (const auto& jc : j.at("components")) {
        std::vector<double> re = jc.at("re").get<std::vector<double>>();
        std::vector<double> im = jc.at("im").get<std::vector<double>>();
        if (re.size() != im.size())
            throw InvalidParameter("state_from_json: re/im length mismatch");
        MixedState::Component c;
        c.weight = jc.at("weight").get<double>();
        c.vector.reserve(re.size());
        for (std::size_t i = 0; i < re.size(); ++i)
            c.vector.emplace_back(re[i], im[i]);
        phi.components.push_back(std::move(c));
    }
    phi.validate();
    return phi;
}

} // namespace moyal
