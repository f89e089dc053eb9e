#include "gch/integral_rep.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gch/errors.hpp"
#include "gch/kahan.hpp"
#include "gch/threads.hpp"

namespace gch {

namespace {

using cplx = std::complex<double>;
constexpr double pi = 3.141592653589793238462643383279502884;

cplx cpow_int(cplx v, int e) {
    if (e < 0) return 1.0 / cpow_int(v, -e);
    cplx out = 1.0, base = v;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

// One-pass series kernel with theta-derivative stack, theta = w d/dw:
//   f(w)    = scale * sum_n (head)_n / ((weight)_n n!) w^n
//   theta f = scale * sum_n n   * ...
// Terminating (degree >= 0) for the polynomial kernels, adaptive otherwise.
struct series_kernel {
    double head = 0.0;
    double weight = 1.0;
    int degree = -1;
    double scale = 1.0;

    std::array<cplx, 3> jet(cplx w, int d) const {
        kahan_complex s0, s1, s2;
        cplx t = 1.0;
        s0.add(t);
        int below = 0;
        const int cap = degree >= 0 ? degree : 10000;
        for (int n = 1; n <= cap; ++n) {
            t *= (head + n - 1.0) * w / ((weight + n - 1.0) * n);
            s0.add(t);
            if (d >= 1) s1.add(static_cast<double>(n) * t);
            if (d >= 2) s2.add(static_cast<double>(n) * n * t);
            if (degree < 0) {
                if (std::abs(t) <= 1e-16 * std::abs(s0.value())) {
                    if (++below >= 3) break;
                } else {
                    below = 0;
                }
                if (n == cap)
                    throw convergence_error("integral_rep: kernel series did not converge");
            }
        }
        return {scale * s0.value(), scale * s1.value(), scale * s2.value()};
    }
};

std::vector<cplx> circle_nodes(const QuadratureSpec& spec) {
    std::vector<cplx> v(spec.circle_nodes);
    for (int k = 0; k < spec.circle_nodes; ++k) {
        const double theta = 2.0 * pi * k / spec.circle_nodes;
        v[k] = spec.circle_radius * cplx(std::cos(theta), std::sin(theta));
    }
    return v;
}

struct rep_context {
    std::vector<quad_rule> t_rules; // index by level, [0] unused
    std::vector<quad_rule> u_rules;
    std::vector<double> opconst;
    std::vector<int> vpow; // net integer v power at each level (kernel terms aside)
    std::vector<cplx> vnodes;
    series_kernel kernel;
};

// theta-jet of the value of levels [level..1] seen as a function of the
// upstream transfer variable W; d derivatives are still pending above.
std::array<cplx, 3> rep_level(const rep_context& ctx, int level, cplx W, int d) {
    if (level == 0) return ctx.kernel.jet(W, d);

    const quad_rule& tr = ctx.t_rules[level];
    const quad_rule& ur = ctx.u_rules[level];
    const double c = ctx.opconst[level];
    const int n_v = static_cast<int>(ctx.vnodes.size());

    kahan_complex j0, j1;
    for (std::size_t it = 0; it < tr.nodes.size(); ++it) {
        const double t = tr.nodes[it];
        for (std::size_t iu = 0; iu < ur.nodes.size(); ++iu) {
            const double u = ur.nodes[iu];
            const double wt = tr.weights[it] * ur.weights[iu];
            const cplx Z = W * (1.0 - t) * (1.0 - u);
            for (int iv = 0; iv < n_v; ++iv) {
                const cplx v = ctx.vnodes[iv];
                const cplx E = -v / (1.0 - v) * Z;
                const cplx K =
                    std::exp(E) * cpow_int(v, ctx.vpow[level]) / (1.0 - v);
                const auto inner = rep_level(ctx, level - 1, W * t * u * v, d + 1);
                const cplx phi0 = inner[1] + c * inner[0];
                const cplx cw = wt * (v / static_cast<double>(n_v)); // contour weight
                j0.add(cw * K * phi0);
                if (d >= 1) {
                    const cplx phi1 = inner[2] + c * inner[1];
                    j1.add(cw * K * (E * phi0 + phi1));
                }
            }
        }
    }
    return {j0.value(), j1.value(), cplx(0.0)};
}

quad_rule line_rule(int nodes, double exponent, const char* what) {
    if (exponent <= -1.0)
        throw domain_error(std::string(what) +
                           ": endpoint exponent <= -1, integral diverges");
    return gauss_jacobi01(nodes, exponent, 0.0);
}

} // namespace

pair_result verify_kj(int j, double lambda, double gamma, int beta_j, int i_prev,
                      double z, const QuadratureSpec& spec) {
    if (j < 1) throw domain_error("verify_kj: j must be positive");
    if (i_prev < 0 || i_prev > beta_j)
        throw domain_error("verify_kj: requires 0 <= i_prev <= beta_j");
    spec.validate();

    const double jh = 0.5 * j, lh = 0.5 * lambda;
    const double pd1 = i_prev + jh + lh;
    const double pd2 = i_prev - 1.0 + gamma + jh + lh;
    if (std::abs(pd1) < 1e-12 || std::abs(pd2) < 1e-12)
        throw domain_error("verify_kj: vanishing prefactor denominator");

    // finite sum side
    kahan_real sum;
    double ratio = 1.0; // Pochhammer ratio from i_prev up to i
    double zp = std::pow(z, i_prev);
    for (int i = i_prev; i <= beta_j; ++i) {
        sum.add(ratio * zp);
        const double d1 = 1.0 + jh + lh + i, d2 = jh + gamma + lh + i;
        if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
            throw domain_error("verify_kj: Pochhammer denominator pole");
        ratio *= (-static_cast<double>(beta_j) + i) / (d1 * d2);
        zp *= z;
    }
    const double lhs = sum.value() / (pd1 * pd2);

    // triple quadrature side
    const quad_rule tr = line_rule(spec.line_nodes, jh - 1.0 + lh, "verify_kj t");
    const quad_rule ur = line_rule(spec.line_nodes, gamma - 2.0 + jh + lh, "verify_kj u");
    const auto vnodes = circle_nodes(spec);
    kahan_complex acc;
    for (std::size_t it = 0; it < tr.nodes.size(); ++it) {
        const double t = tr.nodes[it];
        for (std::size_t iu = 0; iu < ur.nodes.size(); ++iu) {
            const double u = ur.nodes[iu];
            const double wt = tr.weights[it] * ur.weights[iu];
            const double Z = z * (1.0 - t) * (1.0 - u);
            const double ztu = std::pow(z * t * u, i_prev);
            for (const cplx& v : vnodes) {
                const cplx f = std::exp(-v / (1.0 - v) * Z) *
                               cpow_int(v, i_prev - beta_j - 1) / (1.0 - v);
                acc.add(wt * ztu * f * (v / static_cast<double>(vnodes.size())));
            }
        }
    }
    const cplx rhs = acc.value();
    if (!std::isfinite(rhs.real()) || !std::isfinite(rhs.imag()))
        throw convergence_error("verify_kj: quadrature produced non-finite value");
    return {lhs, rhs.real()};
}

pair_result verify_qj(int j, const GchParams& p, double lambda, int i_prev,
                      double z, const QuadratureSpec& spec, int inner_max) {
    if (j < 1) throw domain_error("verify_qj: j must be positive");
    if (i_prev < 0) throw domain_error("verify_qj: i_prev must be nonnegative");
    if (inner_max < 1) throw domain_error("verify_qj: inner_max must be >= 1");
    spec.validate();

    const double jh = 0.5 * j, lh = 0.5 * lambda;
    const double gamma = p.gamma();
    const double q = p.a0() + jh + lh;
    const double a = q + i_prev; // Kummer parameter of the collapsed kernel
    if (!near_integer(a))
        throw domain_error(
            "verify_qj: non-integer v-exponent introduces a branch point at v = 0; "
            "restricted to integer Omega/(2 mu) + j/2 + lambda/2 + i_prev");
    const int ai = static_cast<int>(std::round(a));

    const double pd1 = i_prev + jh + lh;
    const double pd2 = i_prev - 1.0 + gamma + jh + lh;
    if (std::abs(pd1) < 1e-12 || std::abs(pd2) < 1e-12)
        throw domain_error("verify_qj: vanishing prefactor denominator");

    // truncated series side
    kahan_real sum;
    double ratio = 1.0;
    double zp = std::pow(z, i_prev);
    for (int i = i_prev; i <= i_prev + inner_max; ++i) {
        sum.add(ratio * zp);
        const double d1 = 1.0 + jh + lh + i, d2 = jh + gamma + lh + i;
        if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
            throw domain_error("verify_qj: Pochhammer denominator pole");
        ratio *= (q + i) / (d1 * d2);
        zp *= z;
        if (ratio == 0.0) break; // terminating weight
    }
    const double lhs = sum.value() / (pd1 * pd2);

    const quad_rule tr = line_rule(spec.line_nodes, jh - 1.0 + lh, "verify_qj t");
    const quad_rule ur = line_rule(spec.line_nodes, gamma - 2.0 + jh + lh, "verify_qj u");
    const auto vnodes = circle_nodes(spec);
    kahan_complex acc;
    for (std::size_t it = 0; it < tr.nodes.size(); ++it) {
        const double t = tr.nodes[it];
        for (std::size_t iu = 0; iu < ur.nodes.size(); ++iu) {
            const double u = ur.nodes[iu];
            const double wt = tr.weights[it] * ur.weights[iu];
            const double Z = z * (1.0 - t) * (1.0 - u);
            const double ztu = std::pow(z * t * u, i_prev);
            for (const cplx& v : vnodes) {
                cplx f;
                if (ai <= 0) {
                    // direct kernel: pole of order 1 - a at the origin
                    f = std::exp(-v / (1.0 - v) * Z) * cpow_int(v, ai - 1) /
                        (1.0 - v);
                } else {
                    // rewrite through M(a,b,Z) = e^Z M(b-a,b,-Z) so the
                    // terminating factor supplies the pole
                    f = std::exp(Z) * std::exp(v / (1.0 - v) * Z) *
                        cpow_int(v, -ai) / (1.0 - v);
                }
                acc.add(wt * ztu * f * (v / static_cast<double>(vnodes.size())));
            }
        }
    }
    const cplx rhs = acc.value();
    if (!std::isfinite(rhs.real()) || !std::isfinite(rhs.imag()))
        throw convergence_error("verify_qj: quadrature produced non-finite value");
    return {lhs, rhs.real()};
}

namespace {

// Infinite-branch transfer level: the closed-form v-contour is shorthand
// for a Kummer kernel (it stands for M term by term), and a literal circle
// only captures the terms whose v-power is a genuine pole.  Evaluating M(q + i, 1, Z) per kernel term is
// exact for any real q and leaves honest quadrature in (t, u).
double infinite_level_term(const series_kernel& kernel, double q, double c,
                           double z, const quad_rule& tr, const quad_rule& ur) {
    kahan_real acc;
    for (std::size_t it = 0; it < tr.nodes.size(); ++it) {
        const double t = tr.nodes[it];
        for (std::size_t iu = 0; iu < ur.nodes.size(); ++iu) {
            const double u = ur.nodes[iu];
            const double wt = tr.weights[it] * ur.weights[iu];
            const double Z = z * (1.0 - t) * (1.0 - u);
            const double w = z * t * u;
            // sum_i (i + c) psi_i w^i M(q + i, 1, Z)
            kahan_real series;
            double term = 1.0; // psi_i w^i
            int below = 0;
            for (int i = 0; i <= 400; ++i) {
                if (i > 0)
                    term *= (kernel.head + i - 1.0) * w /
                            ((kernel.weight + i - 1.0) * i);
                const double contrib = (i + c) * term * kummer_m(q + i, 1.0, Z);
                series.add(contrib);
                if (i > 4 && std::abs(contrib) <= 1e-16 * std::abs(series.value())) {
                    if (++below >= 3) break;
                } else {
                    below = 0;
                }
                if (i == 400)
                    throw convergence_error(
                        "integral_rep_eval: infinite-branch kernel sum stalled");
            }
            acc.add(wt * kernel.scale * series.value());
        }
    }
    return acc.value();
}

} // namespace

double integral_rep_eval(poly_kind kind, rep_branch branch, const GchParams& p,
                         const TerminationLadder* ladder, double x, int n_cap,
                         const QuadratureSpec& spec) {
    if (n_cap < 0 || n_cap > 2)
        throw domain_error("integral_rep_eval: n_cap must lie in {0, 1, 2} "
                           "(higher transfer orders are out of scope)");
    if (branch == rep_branch::infinite && n_cap > 1)
        throw domain_error(
            "integral_rep_eval: the infinite branch supports n_cap <= 1; two nested "
            "levels shift the v-exponents by half-integers (use the terminated "
            "branch or the series route)");
    spec.validate();
    const double gamma = p.gamma();
    const double z = p.z_of(x);
    const double eps_tilde = p.eps_tilde_of(x);
    const double lambda_shift = (kind == poly_kind::first) ? 0.0 : 2.0 * (1.0 - gamma);

    rep_context ctx;
    ctx.t_rules.resize(n_cap + 1);
    ctx.u_rules.resize(n_cap + 1);
    ctx.opconst.resize(n_cap + 1, 0.0);
    ctx.vpow.resize(n_cap + 1, 0);
    if (n_cap >= 1 && branch == rep_branch::polynomial) ctx.vnodes = circle_nodes(spec);

    if (branch == rep_branch::polynomial) {
        if (!ladder) throw domain_error("integral_rep_eval: polynomial branch needs a ladder");
        ladder->validate();
        if (ladder->size() < n_cap + 1)
            throw domain_error("integral_rep_eval: ladder shorter than n_cap + 1");
    }

    const double a0 = (branch == rep_branch::infinite) ? p.a0() : 0.0;

    for (int level = 1; level <= n_cap; ++level) {
        const double lh2 = 0.5 * level;
        double t_exp, u_exp;
        if (kind == poly_kind::first) {
            t_exp = lh2 - 1.0;
            u_exp = gamma + lh2 - 2.0;
            ctx.opconst[level] = 0.5 * (level - 1.0 + p.omega_low);
        } else {
            t_exp = lh2 - gamma;
            u_exp = lh2 - 1.0;
            ctx.opconst[level] = 0.5 * (level + 1.0 + p.omega_low) - gamma;
        }
        ctx.t_rules[level] = line_rule(spec.line_nodes, t_exp, "integral_rep t");
        ctx.u_rules[level] = line_rule(spec.line_nodes, u_exp, "integral_rep u");
        if (branch == rep_branch::polynomial)
            ctx.vpow[level] = -(ladder->betas[level] + 1);
    }

    if (kind == poly_kind::first) {
        if (branch == rep_branch::polynomial)
            ctx.kernel = {-static_cast<double>(ladder->betas[0]), gamma,
                          ladder->betas[0], pochhammer(gamma, ladder->betas[0])};
        else
            ctx.kernel = {a0, gamma, -1, 1.0};
    } else {
        if (branch == rep_branch::polynomial)
            ctx.kernel = {-static_cast<double>(ladder->betas[0]), 2.0 - gamma,
                          ladder->betas[0], pochhammer(2.0 - gamma, ladder->betas[0])};
        else
            ctx.kernel = {a0 + 1.0 - gamma, 2.0 - gamma, -1, 1.0};
    }

    // order 0 term plus one nested stack per transfer order
    kahan_real total;
    total.add(ctx.kernel.jet(cplx(z), 0)[0].real());
    double eps_pow = 1.0;
    for (int n = 1; n <= n_cap; ++n) {
        eps_pow *= eps_tilde;
        if (branch == rep_branch::infinite) {
            const double q1 = a0 + 0.5 * n + 0.5 * lambda_shift;
            total.add(eps_pow * infinite_level_term(ctx.kernel, q1, ctx.opconst[n], z,
                                                    ctx.t_rules[n], ctx.u_rules[n]));
            continue;
        }
        // terminated branch: genuine (t, u, v) stack; parallel over the
        // outermost t nodes with deterministic reassembly
        const quad_rule& tr = ctx.t_rules[n];
        const quad_rule& ur = ctx.u_rules[n];
        std::vector<cplx> partial(tr.nodes.size(), cplx(0.0));
        parallel_for(tr.nodes.size(), [&](std::size_t it) {
            const double t = tr.nodes[it];
            kahan_complex acc;
            for (std::size_t iu = 0; iu < ur.nodes.size(); ++iu) {
                const double u = ur.nodes[iu];
                const double wt = tr.weights[it] * ur.weights[iu];
                const cplx Z = z * (1.0 - t) * (1.0 - u);
                for (const cplx& v : ctx.vnodes) {
                    const cplx E = -v / (1.0 - v) * Z;
                    const cplx K = std::exp(E) * cpow_int(v, ctx.vpow[n]) / (1.0 - v);
                    const auto inner = rep_level(ctx, n - 1, z * t * u * v, 1);
                    const cplx phi0 = inner[1] + ctx.opconst[n] * inner[0];
                    acc.add(wt * (v / static_cast<double>(ctx.vnodes.size())) * K * phi0);
                }
            }
            partial[it] = acc.value();
        });
        kahan_complex level_sum;
        for (const cplx& c : partial) level_sum.add(c);
        total.add(eps_pow * level_sum.value().real());
    }

    double pref = 1.0;
    if (kind == poly_kind::second) pref *= pow_indicial(z, 1.0 - gamma);
    if (branch == rep_branch::infinite) {
        if (kind == poly_kind::first)
            pref *= std::tgamma(gamma - a0) / std::tgamma(gamma);
        else
            pref *= std::tgamma(1.0 - a0) / std::tgamma(2.0 - gamma);
    }
    return ensure_finite(pref * total.value(), "integral_rep_eval");
}

} // namespace gch
