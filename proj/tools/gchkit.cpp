// gchkit: evaluate, cross-check and tabulate the transfer-series machinery
// from the command line.  CSV/JSON output is deterministic for a fixed
// configuration and seed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gch/errors.hpp"
#include "gch/gch_core.hpp"
#include "gch/physics.hpp"
#include "gch/trf_series.hpp"
#include "gch/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct TableRow {
    std::vector<std::string> cells;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<TableRow> rows;
    std::map<std::string, std::string> meta;
};

void write_csv(const Table& t, std::ostream& os) {
    os << "# gchkit " << kVersion;
    for (const auto& [k, v] : t.meta) os << ' ' << k << '=' << v;
    os << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.cells.size(); ++c)
            os << row.cells[c] << (c + 1 < row.cells.size() ? "," : "");
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    for (const auto& [k, v] : t.meta) meta[k] = v;
    doc["meta"] = meta;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t c = 0; c < t.columns.size(); ++c) r[t.columns[c]] = row.cells[c];
        doc["rows"].push_back(r);
    }
    os << doc.dump(2) << '\n';
}

void emit(const Table& t, const std::string& format, const std::string& output) {
    std::ostringstream buf;
    if (format == "json")
        write_json(t, buf);
    else
        write_csv(t, buf);
    if (output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw gch::domain_error("cannot open output file: " + output);
        f << buf.str();
    }
}

struct EvalOptions {
    gch::GchParams params;
    std::string kind = "first";
    std::string branch = "infinite";
    std::vector<double> xs;
    double x_min = 0.1, x_max = 0.5;
    int x_count = 0;
    std::vector<int> ladder;
    int series_degree = 40;
    gch::TrfTruncation trunc;
};

int run_eval(const EvalOptions& opt, const std::string& format,
             const std::string& output, std::uint64_t seed) {
    std::vector<double> xs = opt.xs;
    for (int k = 0; k < opt.x_count; ++k)
        xs.push_back(opt.x_count == 1
                         ? opt.x_min
                         : opt.x_min + (opt.x_max - opt.x_min) * k / (opt.x_count - 1));
    if (xs.empty()) throw gch::domain_error("eval: no x points given (use --x or --x-count)");

    const gch::IndicialRoots roots = gch::indicial_roots(opt.params);
    double lambda = 0.0;
    if (opt.kind == "second") {
        if (roots.degenerate || roots.near_degenerate)
            throw gch::domain_error(
                "eval: indicial roots are degenerate (nu = 1); the second branch "
                "coincides with the first");
        lambda = roots.second;
    } else if (opt.kind != "first") {
        throw gch::domain_error("eval: --kind must be first or second");
    }

    gch::TerminationLadder ladder;
    const bool polynomial = (opt.branch == "polynomial");
    if (polynomial) {
        if (opt.ladder.empty())
            throw gch::domain_error("eval: polynomial branch needs --ladder");
        ladder.betas = opt.ladder;
        ladder.validate();
        if (ladder.size() < opt.trunc.n_max + 1)
            throw gch::domain_error("eval: ladder must cover n-max + 1 levels");
    } else if (opt.branch != "infinite") {
        throw gch::domain_error("eval: --branch must be infinite or polynomial");
    }

    const gch::SeriesCoeffs oracle =
        gch::frobenius_coeffs(opt.params, lambda, opt.series_degree);

    Table t;
    t.columns = {"x", "series_oracle", "trf_series", "|diff|", "tail_estimate"};
    t.meta["command"] = "eval";
    t.meta["seed"] = std::to_string(seed);
    t.meta["kind"] = opt.kind;
    t.meta["branch"] = opt.branch;
    t.meta["mu"] = fmt(opt.params.mu);
    t.meta["eps"] = fmt(opt.params.eps);
    t.meta["nu"] = fmt(opt.params.nu);
    t.meta["Omega"] = fmt(opt.params.omega_cap);
    t.meta["omega"] = fmt(opt.params.omega_low);
    t.meta["n_max"] = std::to_string(opt.trunc.n_max);
    t.meta["inner_max"] = std::to_string(opt.trunc.inner_max);
    if (polynomial) {
        // record whether Omega admits the supplied termination levels
        const gch::LadderCheck lc =
            gch::ladder_from_omega(opt.params, lambda, ladder.size());
        t.meta["ladder_consistent"] = lc.consistent ? "true" : "false";
    }
    for (double x : xs) {
        const double reference = gch::eval_series(oracle, x).value;
        gch::TrfValue trf;
        if (polynomial) {
            trf = gch::trf_polynomial_eval(ladder, opt.params.gamma(), lambda,
                                           opt.params.omega_low, x, opt.params.z_of(x),
                                           opt.params.eps_tilde_of(x), opt.trunc);
        } else {
            trf = gch::trf_infinite_eval(opt.params, lambda, x, opt.trunc);
        }
        if (!trf.converged)
            std::cerr << "warning: tail estimate above 1e-10 of the value at x = "
                      << fmt(x) << "; raise --n-max/--inner-max\n";
        TableRow row;
        row.cells = {fmt(x), fmt(reference), fmt(trf.value),
                     fmt(std::abs(reference - trf.value)), fmt(trf.tail)};
        t.rows.push_back(row);
    }
    emit(t, format, output);
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& format,
               const std::string& output) {
    const auto results = gch::run_suite(suite, seed);
    Table t;
    t.columns = {"name", "max_error", "tolerance", "pass"};
    t.meta["command"] = "verify";
    t.meta["suite"] = suite;
    t.meta["seed"] = std::to_string(seed);
    for (const auto& r : results) {
        TableRow row;
        row.cells = {r.name, fmt(r.max_error), fmt(r.tolerance), r.pass ? "true" : "false"};
        t.rows.push_back(row);
    }
    emit(t, format, output);
    return gch::all_pass(results) ? 0 : 1;
}

struct SpectrumOptions {
    std::string model;
    int imax = 0, bmax = 0;
    int lm = 0, l = 0, m_quantum = 0;
    double omega_c = 1.0;       // oscillator coupling
    double alpha_f = 1.0, beta_f = 1.0, a = 0.0;
    double omega = 1.0, omega_cyc = 0.0, sigma = 1.0, eps_inf = 1.0;
    double mass = 1.0, hbar = 1.0, charge = 1.0;
    int r_count = 0;
    double r_min = 0.1, r_max = 4.0;
    double norm_rmax = 16.0;
    int norm_nodes = 400;
    gch::TrfTruncation trunc;
};

int run_spectrum(const SpectrumOptions& opt, const std::string& format,
                 const std::string& output, std::uint64_t seed) {
    Table t;
    t.meta["command"] = "spectrum";
    t.meta["model"] = opt.model;
    t.meta["seed"] = std::to_string(seed);

    gch::OscillatorModel osc{opt.lm, opt.omega_c};
    gch::ConfinementModel cm;
    cm.alpha_F = opt.alpha_f;
    cm.beta_F = opt.beta_f;
    cm.a = opt.a;
    cm.mass = opt.mass;
    cm.hbar = opt.hbar;
    gch::QuantumDotModel qd;
    qd.eff_mass = opt.mass;
    qd.omega_conf = opt.omega;
    qd.omega_cyc = opt.omega_cyc;
    qd.sigma = opt.sigma;
    qd.m_quantum = opt.m_quantum;
    qd.eps_inf = opt.eps_inf;
    qd.charge = opt.charge;
    qd.hbar = opt.hbar;

    const auto eigenvalue = [&](int i, int b) {
        if (opt.model == "oscillator") return gch::oscillator_eigenvalue(osc, i, b);
        if (opt.model == "confinement") return gch::confinement_energy(cm, i, b, opt.l);
        if (opt.model == "qdot") return gch::qdot_energy(qd, i, b);
        throw gch::domain_error("spectrum: model must be oscillator, confinement or qdot");
    };
    const auto wavefunction = [&](int i, int b, double r) {
        if (opt.model == "oscillator") return gch::wavefunction_eval(osc, i, b, r, opt.trunc);
        if (opt.model == "confinement")
            return gch::wavefunction_eval(cm, i, b, opt.l, r, opt.trunc);
        return gch::wavefunction_eval(qd, i, b, r, std::nullopt, opt.trunc).real();
    };
    const auto norm_of = [&](int i, int b) {
        if (opt.model == "oscillator")
            return gch::normalize(osc, i, b, opt.norm_rmax, opt.norm_nodes, opt.trunc);
        if (opt.model == "confinement")
            return gch::normalize(cm, i, b, opt.l, opt.norm_rmax, opt.norm_nodes, opt.trunc);
        return gch::normalize(qd, i, b, opt.norm_rmax, opt.norm_nodes, opt.trunc);
    };

    if (opt.r_count <= 0) {
        t.columns = {"i", "beta", "eigenvalue"};
        for (int i = 0; i <= opt.imax; ++i)
            for (int b = 0; b <= opt.bmax; ++b) {
                TableRow row;
                row.cells = {std::to_string(i), std::to_string(b), fmt(eigenvalue(i, b))};
                t.rows.push_back(row);
            }
    } else {
        t.columns = {"i", "beta", "r", "psi_normalized"};
        for (int i = 0; i <= opt.imax; ++i)
            for (int b = 0; b <= opt.bmax; ++b) {
                const double n = norm_of(i, b);
                for (int k = 0; k < opt.r_count; ++k) {
                    const double r =
                        opt.r_count == 1
                            ? opt.r_min
                            : opt.r_min + (opt.r_max - opt.r_min) * k / (opt.r_count - 1);
                    TableRow row;
                    row.cells = {std::to_string(i), std::to_string(b), fmt(r),
                                 fmt(n * wavefunction(i, b, r))};
                    t.rows.push_back(row);
                }
            }
    }
    emit(t, format, output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-series toolkit for the grand confluent hypergeometric family"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "flat key=value configuration file; flags win");
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "write the table to this path instead of stdout");
    app.add_option("--seed", seed, "seed for randomized property suites");

    EvalOptions ev;
    CLI::App* eval = app.add_subcommand("eval", "evaluate the series against the recurrence oracle");
    eval->fallthrough();
    eval->add_option("--mu", ev.params.mu)->required();
    eval->add_option("--eps", ev.params.eps)->required();
    eval->add_option("--nu", ev.params.nu)->required();
    eval->add_option("--Omega", ev.params.omega_cap)->required();
    eval->add_option("--omega", ev.params.omega_low)->required();
    eval->add_option("--kind", ev.kind, "first (lambda=0) or second (lambda=1-nu)");
    eval->add_option("--branch", ev.branch, "infinite or polynomial");
    eval->add_option("--x", ev.xs, "evaluation points (repeatable)");
    eval->add_option("--x-min", ev.x_min);
    eval->add_option("--x-max", ev.x_max);
    eval->add_option("--x-count", ev.x_count, "size of the uniform x grid");
    eval->add_option("--ladder", ev.ladder, "termination ladder for the polynomial branch");
    eval->add_option("--series-degree", ev.series_degree, "oracle truncation degree");
    eval->add_option("--n-max", ev.trunc.n_max, "transfer-order cutoff");
    eval->add_option("--inner-max", ev.trunc.inner_max, "inner sum cap (infinite branch)");

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run a property suite");
    verify->fallthrough();
    verify->add_option("suite", suite, "kernels|series|kj|qj|integral|genfunc|apps|all")
        ->check(CLI::IsMember(gch::suite_names()));

    SpectrumOptions sp;
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue tables and wave-function samples");
    spectrum->fallthrough();
    spectrum->add_option("model", sp.model, "oscillator|confinement|qdot")
        ->required()
        ->check(CLI::IsMember({"oscillator", "confinement", "qdot"}));
    spectrum->add_option("--imax", sp.imax);
    spectrum->add_option("--bmax", sp.bmax);
    spectrum->add_option("--lm", sp.lm, "rotational quantum number (oscillator)");
    spectrum->add_option("--l", sp.l, "angular momentum (confinement)");
    spectrum->add_option("--m", sp.m_quantum, "angular momentum (qdot)");
    spectrum->add_option("--coupling", sp.omega_c, "oscillator coupling parameter");
    spectrum->add_option("--alpha-f", sp.alpha_f);
    spectrum->add_option("--beta-f", sp.beta_f);
    spectrum->add_option("--a", sp.a, "Coulomb coefficient (confinement)");
    spectrum->add_option("--omega", sp.omega, "confinement frequency (qdot)");
    spectrum->add_option("--omega-c", sp.omega_cyc, "cyclotron frequency (qdot)");
    spectrum->add_option("--sigma", sp.sigma);
    spectrum->add_option("--eps-inf", sp.eps_inf);
    spectrum->add_option("--mass", sp.mass);
    spectrum->add_option("--hbar", sp.hbar);
    spectrum->add_option("--charge", sp.charge);
    spectrum->add_option("--r-count", sp.r_count, "emit normalized wave-function samples");
    spectrum->add_option("--r-min", sp.r_min);
    spectrum->add_option("--r-max", sp.r_max);
    spectrum->add_option("--norm-rmax", sp.norm_rmax);
    spectrum->add_option("--norm-nodes", sp.norm_nodes);
    spectrum->add_option("--n-max", sp.trunc.n_max, "transfer-order cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(ev, format, output, seed);
        if (verify->parsed()) return run_verify(suite, seed, format, output);
        if (spectrum->parsed()) return run_spectrum(sp, format, output, seed);
    } catch (const gch::convergence_error& e) {
        std::cerr << "error (non-convergence): " << e.what() << '\n';
        return 3;
    } catch (const gch::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
