// moyal: verification suites, scans and tables for the truncated Moyal
// plane spectral distance. Emits CSV or JSON; exit codes are scriptable:
//   0 pass, 1 verification fail, 2 usage, 3 truncation guard, 4 I/O.

#include "moyal/solver.hpp"
#include "moyal/symplectic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace moyal;

namespace {

struct RunConfig {
    double theta = 1.0;
    std::size_t store_dim = 128;
    std::size_t pad = 4;
    std::vector<double> beta_grid;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    double rel_tolerance = 0.02;
    std::string format = "json"; // csv | json
    std::string output;          // empty: stdout

    SolverOptions solver() const
    {
        SolverOptions o;
        o.pad = pad;
        o.seed = seed;
        o.beta_grid = beta_grid;
        return o;
    }

    json to_json() const
    {
        json j;
        j["theta"] = theta;
        j["store_dim"] = store_dim;
        j["pad"] = pad;
        j["beta_grid"] = beta_grid;
        j["seed"] = seed;
        j["tolerance"] = tolerance;
        j["rel_tolerance"] = rel_tolerance;
        j["format"] = format;
        return j;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(std::string s)
{
    // Accepts "1", "-0.5", "1+2i", "0.3-0.1i", "2i".
    for (char& c : s)
        if (c == 'I' || c == 'j')
            c = 'i';
    double re = 0.0, im = 0.0;
    std::size_t pos = 0;
    try {
        if (s.empty())
            throw UsageError("empty complex literal");
        if (s.back() == 'i') {
            std::string body = s.substr(0, s.size() - 1);
            // split at the last +/- that is not an exponent sign
            std::size_t split = std::string::npos;
            for (std::size_t k = body.size(); k-- > 1;) {
                if ((body[k] == '+' || body[k] == '-') &&
                    body[k - 1] != 'e' && body[k - 1] != 'E') {
                    split = k;
                    break;
                }
            }
            if (split == std::string::npos) {
                im = body.empty() ? 1.0 : std::stod(body, &pos);
            } else {
                re = std::stod(body.substr(0, split), &pos);
                std::string imag = body.substr(split);
                im = (imag == "+" || imag == "-") ? std::stod(imag + "1")
                                                  : std::stod(imag, &pos);
            }
        } else {
            re = std::stod(s, &pos);
            if (pos != s.size())
                throw UsageError("trailing characters in '" + s + "'");
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("cannot parse complex value '" + s + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("complex value out of range: '" + s + "'");
    }
    return {re, im};
}

MixedState parse_state(const std::string& spec, const RunConfig& cfg)
{
    if (spec == "ground")
        return coherent_state({0.0, 0.0}, cfg.store_dim, cfg.theta);
    if (spec.rfind("coherent:", 0) == 0)
        return coherent_state(parse_complex(spec.substr(9)), cfg.store_dim,
                              cfg.theta);
    if (spec.rfind("eigen:", 0) == 0) {
        std::size_t n = 0;
        try {
            n = std::stoul(spec.substr(6));
        } catch (const std::exception&) {
            throw UsageError("bad eigenstate index in '" + spec + "'");
        }
        return eigenstate(n, cfg.store_dim, cfg.theta, cfg.pad);
    }
    if (spec.rfind("mixed:", 0) == 0) {
        std::ifstream in(spec.substr(6));
        if (!in)
            throw std::ios_base::failure("cannot open state file '" +
                                         spec.substr(6) + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return state_from_json(buf.str());
    }
    throw UsageError("unknown state spec '" + spec +
                     "' (ground|coherent:k|eigen:n|mixed:file)");
}

std::vector<cplx> parse_kappa_list(const std::string& list)
{
    std::vector<cplx> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_complex(item));
    if (out.empty())
        throw UsageError("empty kappa list");
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_output(const RunConfig& cfg, const std::string& text)
{
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open '" + cfg.output + "'");
    out << text;
    if (!out)
        throw std::ios_base::failure("write failed on '" + cfg.output + "'");
}

void emit_report(const RunConfig& cfg, json report)
{
    report["config"] = cfg.to_json();
    write_output(cfg, report.dump(2) + "\n");
}

void emit_csv(const RunConfig& cfg, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows)
{
    std::string text;
    for (std::size_t i = 0; i < header.size(); ++i)
        text += (i ? "," : "") + csv_field(header[i]);
    text += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            text += (i ? "," : "") + csv_field(row[i]);
        text += "\n";
    }
    write_output(cfg, text);
}

std::vector<double> geometric_betas(std::size_t count)
{
    // count geometric points in (0, beta1], largest = beta1.
    const double beta1 = beta_thresholds().beta1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k)
        grid[k] = beta1 * std::pow(0.5, double(k) / 2.0);
    return grid;
}

int cmd_verify_translation(const RunConfig& cfg, const std::string& kappa_s,
                           const std::string& state_s)
{
    cplx kappa = parse_complex(kappa_s);
    MixedState phi = parse_state(state_s, cfg);
    DistanceEstimate est = translation_distance(phi, kappa, cfg.solver());

    const double scale = std::max(std::abs(kappa), 1e-30);
    const bool pass = est.diagnostics.gap <= cfg.rel_tolerance * scale ||
                      kappa == cplx{0.0, 0.0};
    json r;
    r["command"] = "verify-translation";
    r["kappa_re"] = kappa.real();
    r["kappa_im"] = kappa.imag();
    r["state"] = state_s;
    r["lower"] = est.lower;
    r["upper"] = est.upper;
    r["gap"] = est.diagnostics.gap;
    r["beta"] = est.diagnostics.beta;
    r["dim"] = est.diagnostics.dim;
    r["pass"] = pass;
    emit_report(cfg, r);
    return pass ? 0 : 1;
}

int cmd_verify_pythagoras(const RunConfig& cfg, const std::string& kappa_s,
                          double lambda, const std::string& state_s)
{
    if (!(lambda > 0.0))
        throw UsageError("--lambda must be > 0");
    cplx kappa = parse_complex(kappa_s);
    MixedState phi = parse_state(state_s, cfg);
    MixedState phit = translate_state(phi, kappa, cfg.pad);

    DistanceEstimate dd =
        double_distance(phi, 1, phit, 2, lambda, kappa, cfg.solver());
    const double internal = 1.0 / lambda;
    const double target =
        std::sqrt(std::norm(kappa) + internal * internal);
    const double residual = (target - dd.lower) / target;
    const bool pass = residual <= cfg.rel_tolerance;

    json r;
    r["command"] = "verify-pythagoras";
    r["kappa_re"] = kappa.real();
    r["kappa_im"] = kappa.imag();
    r["lambda"] = lambda;
    r["state"] = state_s;
    r["d1"] = dd.diagnostics.d1;
    r["d_internal"] = internal;
    r["d_double_lower"] = dd.lower;
    r["d_double_upper"] = dd.upper;
    r["target"] = target;
    r["residual"] = residual;
    r["pass"] = pass;
    emit_report(cfg, r);
    return pass ? 0 : 1;
}

int cmd_schur_scan(const RunConfig& cfg)
{
    std::vector<double> grid =
        cfg.beta_grid.empty() ? geometric_betas(20) : cfg.beta_grid;
    std::vector<std::vector<std::string>> rows;
    bool all_in = true;
    for (double b : grid) {
        std::size_t dim = std::max(cfg.store_dim, std::size_t(2.0 / b) + 8);
        SchurCertificate c = schur_certificate(b, dim);
        all_in = all_in && c.in_ball();
        rows.push_back({num(c.beta), num(c.row_sup), num(c.col_sup),
                        num(c.schur_bound), num(c.exact_norm),
                        c.in_ball() ? "true" : "false"});
    }
    emit_csv(cfg, {"beta", "row_sup", "col_sup", "schur_bound", "exact_norm",
                   "in_ball"},
             rows);
    return all_in ? 0 : 1;
}

int cmd_coherent_table(const RunConfig& cfg, const std::string& kappa_list)
{
    std::vector<cplx> ks = parse_kappa_list(kappa_list);
    if (ks.size() < 2)
        throw UsageError("--kappa-list needs at least two values");
    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        cplx a = ks[i], b = ks[i + 1];
        MixedState sa = coherent_state(a, cfg.store_dim, cfg.theta);
        MixedState sb = coherent_state(b, cfg.store_dim, cfg.theta);
        DistanceEstimate est = maximize_distance(sa, sb, cfg.solver());
        double exact = std::sqrt(2.0) * std::abs(b - a);
        double rel = exact > 0 ? std::abs(exact - est.lower) / exact : 0.0;
        all_pass = all_pass && rel <= cfg.rel_tolerance;
        rows.push_back({num(a.real()), num(a.imag()), num(b.real()),
                        num(b.imag()), num(est.lower), num(exact), num(rel)});
    }
    emit_csv(cfg, {"kappa_re", "kappa_im", "kappat_re", "kappat_im", "lower",
                   "dD_exact", "rel_err"},
             rows);
    return all_pass ? 0 : 1;
}

int cmd_dfr_compare(const RunConfig& cfg, const std::string& kappa_list)
{
    std::vector<cplx> ks = parse_kappa_list(kappa_list);
    MixedState ground = coherent_state({0.0, 0.0}, cfg.store_dim, cfg.theta);
    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    for (cplx k : ks) {
        MixedState om = coherent_state(k, cfg.store_dim, cfg.theta);
        double self = quantum_length_squared(om, om);
        double pair = quantum_length_squared(om, ground);
        double sqrt_gap = std::sqrt(std::max(0.0, pair - self));
        double exact = std::sqrt(2.0) * std::abs(k);
        double rel = exact > 0 ? std::abs(sqrt_gap - exact) / exact
                               : std::abs(sqrt_gap - exact);
        all_pass = all_pass && rel <= cfg.tolerance;
        rows.push_back({num(k.real()), num(k.imag()), num(self), num(pair),
                        num(sqrt_gap), num(exact), num(rel)});
    }
    emit_csv(cfg, {"kappa_re", "kappa_im", "dL2_self", "dL2_pair", "sqrt_gap",
                   "dD_exact", "rel_err"},
             rows);
    return all_pass ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg, const std::string& a_s,
              const std::string& b_s)
{
    MixedState a = parse_state(a_s, cfg);
    MixedState b = parse_state(b_s, cfg);
    DistanceEstimate est = maximize_distance(a, b, cfg.solver());

    std::string witness_ref;
    if (!cfg.output.empty() && est.witness) {
        witness_ref = cfg.output + ".witness.json";
        json w;
        w["dim"] = est.witness->dim();
        w["theta"] = est.witness->theta();
        w["unit_re"] = est.witness->unit_part.real();
        w["unit_im"] = est.witness->unit_part.imag();
        if (est.diagnostics.beta > 0.0) {
            w["family"] = "f_beta";
            w["beta"] = est.diagnostics.beta;
        } else {
            w["family"] = "matrix";
            json re = json::array(), im = json::array();
            const CMat& m = est.witness->op.entries;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                json rrow = json::array(), irow = json::array();
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    rrow.push_back(m(i, j).real());
                    irow.push_back(m(i, j).imag());
                }
                re.push_back(rrow);
                im.push_back(irow);
            }
            w["re"] = re;
            w["im"] = im;
        }
        std::ofstream out(witness_ref, std::ios::binary);
        if (!out)
            throw std::ios_base::failure("cannot open '" + witness_ref + "'");
        out << w.dump(2) << "\n";
    }

    json r;
    r["command"] = "solve";
    r["lower"] = est.lower;
    r["upper"] = std::isfinite(est.upper) ? json(est.upper) : json("inf");
    r["gap"] = std::isfinite(est.diagnostics.gap)
                   ? json(est.diagnostics.gap)
                   : json("inf");
    r["beta"] = est.diagnostics.beta;
    r["dim"] = est.diagnostics.dim;
    r["iterations"] = est.diagnostics.iterations;
    r["witness_ref"] = witness_ref;
    emit_report(cfg, r);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spectral distances on the truncated Moyal plane"};
    app.set_config("--config", "", "flat key=value config file");
    app.require_subcommand(1);
    app.fallthrough(); // accept global options after the subcommand name

    RunConfig cfg;
    app.add_option("--theta", cfg.theta, "deformation parameter")
        ->check(CLI::PositiveNumber);
    app.add_option("--store_dim", cfg.store_dim, "truncation dimension");
    app.add_option("--pad", cfg.pad, "commutator padding");
    app.add_option("--beta_grid", cfg.beta_grid, "explicit beta grid")
        ->delimiter(',');
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--tolerance", cfg.tolerance, "absolute tolerance");
    app.add_option("--rel_tolerance", cfg.rel_tolerance,
                   "relative tolerance for verification gates");
    app.add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output, "output path (default stdout)");

    std::string kappa = "0", state = "ground", state_b = "ground";
    std::string kappa_list;
    double lambda = 1.0;

    auto* vt = app.add_subcommand("verify-translation",
                                  "check d(phi, phi_kappa) = |kappa|");
    vt->add_option("--kappa", kappa, "translation amplitude (complex)");
    vt->add_option("--state", state, "ground|coherent:k|eigen:n|mixed:file");

    auto* vp = app.add_subcommand("verify-pythagoras",
                                  "check the doubled-space Pythagoras equality");
    vp->add_option("--kappa", kappa, "translation amplitude (complex)");
    vp->add_option("--lambda", lambda, "internal Dirac parameter");
    vp->add_option("--state", state, "base state spec");

    auto* ss = app.add_subcommand("schur-scan",
                                  "Schur certificate table over a beta grid");

    auto* ct = app.add_subcommand("coherent-table",
                                  "distances between consecutive coherent states");
    ct->add_option("--kappa-list", kappa_list, "comma-separated kappa values");

    auto* dc = app.add_subcommand("dfr-compare",
                                  "quantum length vs spectral distance table");
    dc->add_option("--kappa-list", kappa_list, "comma-separated kappa values");

    auto* sv = app.add_subcommand("solve", "lower-bound solver for a state pair");
    sv->add_option("--state-a", state, "first state spec");
    sv->add_option("--state-b", state_b, "second state spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        TruncationPolicy{cfg.store_dim, cfg.pad}.validate();
        if (ss->parsed())
            return cmd_schur_scan(cfg);
        if (vt->parsed())
            return cmd_verify_translation(cfg, kappa, state);
        if (vp->parsed())
            return cmd_verify_pythagoras(cfg, kappa, lambda, state);
        if (ct->parsed()) {
            if (kappa_list.empty())
                kappa_list = "1,0.707+0.707i,1i,-0.707+0.707i,-1";
            return cmd_coherent_table(cfg, kappa_list);
        }
        if (dc->parsed()) {
            if (kappa_list.empty())
                kappa_list = "0.25,0.5,0.5+0.5i,1i,1";
            return cmd_dfr_compare(cfg, kappa_list);
        }
        if (sv->parsed())
            return cmd_solve(cfg, state, state_b);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const TruncationOverflow& e) {
        std::cerr << "truncation guard: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
