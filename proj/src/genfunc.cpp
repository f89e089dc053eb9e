#include "gch/genfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "gch/errors.hpp"
#include "gch/gch_core.hpp"
#include "gch/kahan.hpp"
#include "gch/trf_series.hpp"

namespace gch {

namespace {

double lattice_size(int beta_cap, int n_cap) {
    // number of nondecreasing (n_cap+1)-tuples with entries <= beta_cap
    double count = 1.0;
    for (int k = 1; k <= n_cap + 1; ++k)
        count *= static_cast<double>(beta_cap + 1 + n_cap + 1 - k) / k;
    return count;
}

// A and B kernels of the closed form with their theta-jets,
// theta = w d/dw:  kern = (1-s)^p exp(-w s/(1-s)),  theta kern = E * kern,
// theta^2 kern = E (1 + E) kern with E = -w s/(1-s).
struct exp_kernel {
    double power; // -gamma (first kind) or gamma - 2 (second kind)
    double s0;

    double value(double w) const {
        return std::pow(1.0 - s0, power) * std::exp(-w * s0 / (1.0 - s0));
    }
    double log_slope(double w) const { return -w * s0 / (1.0 - s0); }
};

} // namespace

double WeightSeq::tail_product(int a) const {
    if (a > support()) return 0.0;
    double prod = 1.0;
    for (int l = a; l <= support(); ++l) prod *= s[l];
    return prod;
}

void WeightSeq::validate() const {
    if (s.empty()) throw domain_error("WeightSeq: needs at least one weight");
    for (double w : s)
        if (!(std::abs(w) < 1.0))
            throw domain_error("WeightSeq: weights must satisfy |s_i| < 1");
}

double genfunc_chp(poly_kind kind, double t, double gamma, double z) {
    if (!(std::abs(t) < 1.0)) throw domain_error("genfunc_chp: requires |t| < 1");
    const double power = (kind == poly_kind::first) ? -gamma : gamma - 2.0;
    return std::pow(1.0 - t, power) * std::exp(-z * t / (1.0 - t));
}

double genfunc_gch_lhs(poly_kind kind, double gamma, double omega_low,
                       const WeightSeq& ws, double mu, double eps, double x,
                       int beta_cap, int n_cap) {
    ws.validate();
    if (n_cap < 0) throw domain_error("genfunc_gch_lhs: n_cap must be nonnegative");
    if (ws.support() < n_cap)
        throw domain_error("genfunc_gch_lhs: weight support must cover n_cap levels");
    if (beta_cap < 0) throw domain_error("genfunc_gch_lhs: beta_cap must be nonnegative");
    if (lattice_size(beta_cap, n_cap) > 1e7)
        throw budget_error("genfunc_gch_lhs: beta-lattice exceeds 1e7 points");

    const double z = -0.5 * mu * x * x;
    const double eps_tilde = -0.5 * eps * x;
    const int K = ws.support();

    // geometric closure of the operator chain past n_cap:
    //   prod_{k > n_cap} sum_{beta_k >= beta_{k-1}} s_k^{beta_k}
    //     = s_{n_cap+1,K}^{beta_{n_cap}} prod_{k=n_cap+1}^{K} 1/(1 - s_{k,K})
    double tail_scale = 1.0;
    for (int k = n_cap + 1; k <= K; ++k) tail_scale /= (1.0 - ws.tail_product(k));
    const double tail_base = (n_cap + 1 <= K) ? ws.tail_product(n_cap + 1) : 1.0;

    TrfTruncation trunc;
    trunc.n_max = n_cap;

    kahan_real acc;
    std::vector<int> beta(n_cap + 1, 0);
    // enumerate nondecreasing tuples
    const std::function<void(int, int, double)> walk = [&](int level, int lo,
                                                           double weight_so_far) {
        for (int b = lo; b <= beta_cap; ++b) {
            double w = weight_so_far;
            if (level == 0) {
                w *= std::pow(ws.s[0], b) / std::tgamma(b + 1.0);
            } else {
                w *= std::pow(ws.s[level], b);
            }
            beta[level] = b;
            if (level == n_cap) {
                TerminationLadder ladder;
                ladder.betas = beta;
                const double y =
                    qw_rw_eval(kind, ladder, gamma, omega_low, z, eps_tilde, trunc);
                acc.add(w * std::pow(tail_base, b) * tail_scale * y);
            } else {
                walk(level + 1, b, w);
            }
        }
    };
    walk(0, 0, 1.0);
    return ensure_finite(acc.value(), "genfunc_gch_lhs");
}

namespace {

using cplx = std::complex<double>;
constexpr double pi_const = 3.141592653589793238462643383279502884;

// One transfer block of the closed form.  The geometric beta-sums and the
// beta_0-kernel are resummed analytically inside the integrand; each level
// keeps one numerical v-circle because the resummed kernel drags a
// singularity at v-product = s_{0,inf} through every admissible contour, and
// dropping it (as a residue collapse that keeps only the geometric pole
// would) loses an O(s_{0,inf}) contribution.
struct gen_block_context {
    std::vector<quad_rule> t_rules; // per level, [0] unused
    std::vector<quad_rule> u_rules;
    std::vector<double> opconst;
    std::vector<double> s_tail; // s_{l,inf} per level
    std::vector<cplx> vnodes;
    double s0inf;
    double kernel_power;
};

// theta-jet (theta = W d/dW) of levels [level..1] under upstream transfer
// variable W; vprod collects the enclosing v's, which feed the kernel slot
// U = s_{0,inf}/(v_1 ... v_n) and the geometric poles.
std::array<cplx, 3> gen_block_level(const gen_block_context& ctx, int level, cplx W,
                                    cplx vprod, int d) {
    if (level == 0) {
        const cplx u = ctx.s0inf / vprod;
        const cplx a = std::pow(1.0 - u, ctx.kernel_power) * std::exp(-W * u / (1.0 - u));
        const cplx e0 = -W * u / (1.0 - u);
        return {a, e0 * a, e0 * (1.0 + e0) * a};
    }
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
                // geometric factor: (1/v) / (1 - s_{l,inf}/(v vprod))
                const cplx geom = 1.0 / (v - ctx.s_tail[level] / vprod);
                const cplx K = std::exp(E) / (1.0 - v) * geom;
                const auto inner = gen_block_level(ctx, level - 1, W * t * u * v,
                                                   vprod * v, d + 1);
                const cplx phi0 = inner[1] + c * inner[0];
                const cplx cw = wt * (v / static_cast<double>(n_v));
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

} // namespace

double genfunc_gch_rhs(poly_kind kind, double gamma, double omega_low,
                       const WeightSeq& ws, double mu, double eps, double x,
                       int n_cap, const QuadratureSpec& spec) {
    ws.validate();
    spec.validate();
    if (n_cap < 0 || n_cap > 2)
        throw domain_error("genfunc_gch_rhs: n_cap must lie in {0, 1, 2}");
    if (ws.support() < n_cap)
        throw domain_error("genfunc_gch_rhs: weight support must cover n_cap levels");

    const double z = -0.5 * mu * x * x;
    const double eps_tilde = -0.5 * eps * x;
    const int K = ws.support();
    const double kernel_power = (kind == poly_kind::first) ? -gamma : gamma - 2.0;

    const auto prefprod = [&](int from) {
        double prod = 1.0;
        for (int k = from; k <= K; ++k) prod /= (1.0 - ws.tail_product(k));
        return prod;
    };

    // order 0 sums the whole beta_0 chain: the kernel weight is the full
    // tail product s_{0,inf} at argument z
    const exp_kernel kern_tail{kernel_power, ws.tail_product(0)};
    kahan_real total;
    total.add(prefprod(1) * kern_tail.value(z));

    double eps_pow = 1.0;
    for (int n = 1; n <= n_cap; ++n) {
        eps_pow *= eps_tilde;

        gen_block_context ctx;
        ctx.t_rules.resize(n + 1);
        ctx.u_rules.resize(n + 1);
        ctx.opconst.resize(n + 1, 0.0);
        ctx.s_tail.resize(n + 1, 0.0);
        ctx.s0inf = ws.tail_product(0);
        ctx.kernel_power = kernel_power;
        for (int level = 1; level <= n; ++level) {
            const double lh = 0.5 * level;
            const double t_exp = (kind == poly_kind::first) ? lh - 1.0 : lh - gamma;
            const double u_exp = (kind == poly_kind::first) ? gamma + lh - 2.0 : lh - 1.0;
            ctx.t_rules[level] = gauss_jacobi01(spec.line_nodes, t_exp, 0.0);
            ctx.u_rules[level] = gauss_jacobi01(spec.line_nodes, u_exp, 0.0);
            ctx.opconst[level] = (kind == poly_kind::first)
                                     ? 0.5 * (level - 1.0 + omega_low)
                                     : 0.5 * (level + 1.0 + omega_low) - gamma;
            ctx.s_tail[level] = ws.tail_product(level);
            // every singularity must sit inside the circle stack
            const double pole = std::abs(ctx.s_tail[level]) /
                                std::pow(spec.circle_radius, n - level);
            if (pole >= 0.9 * spec.circle_radius)
                throw domain_error("genfunc_gch_rhs: circle_radius too small for the "
                                   "weight products; enlarge it");
        }
        if (std::abs(ctx.s0inf) >= 0.9 * std::pow(spec.circle_radius, n))
            throw domain_error("genfunc_gch_rhs: circle_radius too small for s_{0,inf}");
        ctx.vnodes.resize(spec.circle_nodes);
        for (int k = 0; k < spec.circle_nodes; ++k) {
            const double theta = 2.0 * pi_const * k / spec.circle_nodes;
            ctx.vnodes[k] =
                spec.circle_radius * cplx(std::cos(theta), std::sin(theta));
        }

        const auto block = gen_block_level(ctx, n, cplx(z), cplx(1.0), 0);
        total.add(prefprod(n + 1) * eps_pow * block[0].real());
    }

    double pref = 1.0;
    if (kind == poly_kind::second) pref = pow_indicial(z, 1.0 - gamma);
    return ensure_finite(pref * total.value(), "genfunc_gch_rhs");
}

} // namespace gch
