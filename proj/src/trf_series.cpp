#include "gch/trf_series.hpp"

#include <cmath>
#include <string>

#include "gch/errors.hpp"
#include "gch/kahan.hpp"

namespace gch {

namespace {

// Per-level data of the transfer series.  Level k contributes
//   Pochhammer weight  rho_k(i) = (head_k)_i / ((d1_k)_i (d2_k)_i)
//   successive ratio   r_k(j)   = (head_k + j) / ((d1_k + j)(d2_k + j))
//   transfer prefactor P_k(i)   = num_k(i) / ((i + p1_k)(i + p2_k))
// with num_k(i) = i + lambda/2 + omega/2 + k/2, or 1 in the vanishing-eps
// limit where eps*omega stays finite.
struct level_model {
    double head;
    double d1, d2;
    double p1, p2;
    double pnum_base; // numerator is i + pnum_base
    bool unit_numerator;
    int cap;

    double ratio(int j) const { return (head + j) / ((d1 + j) * (d2 + j)); }
    double prefactor(int i) const {
        const double num = unit_numerator ? 1.0 : (i + pnum_base);
        return num / ((i + p1) * (i + p2));
    }
};

enum class branch_kind { polynomial, infinite };

std::vector<level_model> build_levels(branch_kind branch, int n_levels,
                                      const TerminationLadder* ladder, double a0,
                                      double gamma, double lambda, double omega_low,
                                      bool unit_numerator, int inner_max) {
    std::vector<level_model> levels(n_levels + 1);
    for (int k = 0; k <= n_levels; ++k) {
        level_model& L = levels[k];
        const double kh = 0.5 * k;
        L.d1 = 1.0 + kh + 0.5 * lambda;
        L.d2 = gamma + kh + 0.5 * lambda;
        L.p1 = 0.5 + 0.5 * lambda + kh;
        L.p2 = gamma - 0.5 + 0.5 * lambda + kh;
        L.pnum_base = 0.5 * lambda + 0.5 * omega_low + kh;
        L.unit_numerator = unit_numerator;
        if (branch == branch_kind::polynomial) {
            L.head = -static_cast<double>(ladder->betas[k]);
            L.cap = ladder->betas[k];
        } else {
            L.head = a0 + kh + 0.5 * lambda;
            L.cap = inner_max;
        }
        for (int j = 0; j < L.cap; ++j) {
            if (std::abs(L.d1 + j) < 1e-12 || std::abs(L.d2 + j) < 1e-12)
                throw domain_error("transfer series: Pochhammer denominator pole at level " +
                                   std::to_string(k));
        }
        for (int i = 0; i <= L.cap; ++i) {
            if (std::abs(i + L.p1) < 1e-12 || std::abs(i + L.p2) < 1e-12)
                throw domain_error("transfer series: prefactor pole at level " +
                                   std::to_string(k));
        }
    }
    return levels;
}

// Number of nondecreasing index chains the literal nested iteration visits.
double chain_count(const std::vector<level_model>& levels) {
    double total = 0.0;
    const int cap_max = [&] {
        int c = 0;
        for (const auto& L : levels) c = std::max(c, L.cap);
        return c;
    }();
    std::vector<double> d(cap_max + 1, 0.0), nd(cap_max + 1, 0.0);
    for (int i = 0; i <= levels[0].cap; ++i) d[i] = 1.0;
    total += levels[0].cap + 1;
    for (int n = 1; n < static_cast<int>(levels.size()); ++n) {
        double run = 0.0;
        for (int i = 0; i <= cap_max; ++i) {
            if (i <= levels[n - 1].cap) run += d[i];
            nd[i] = (i <= levels[n].cap) ? run : 0.0;
        }
        d = nd;
        double count = 0.0;
        for (int i = 0; i <= levels[n].cap; ++i) count += d[i];
        total += count;
        if (total > 1e8) break;
    }
    return total;
}

// Literal nested evaluation of the order-n block, exactly in the order the
// series is written: i_0 outermost, each deeper index starting at the
// previous one.  rho holds the memoised prefix products per level.
double nested_block(const std::vector<level_model>& levels,
                    const std::vector<std::vector<double>>& rho,
                    const std::vector<double>& z_pow, int n, int k, int i_prev) {
    const level_model& L = levels[k];
    kahan_real acc;
    if (k == n) {
        for (int i = i_prev; i <= L.cap; ++i)
            acc.add(rho[k][i] / rho[k][i_prev] * z_pow[i]);
        return acc.value();
    }
    for (int i = i_prev; i <= L.cap; ++i) {
        acc.add(L.prefactor(i) * rho[k][i] / rho[k][i_prev] *
                nested_block(levels, rho, z_pow, n, k + 1, i));
    }
    return acc.value();
}

// Suffix-sum evaluation of the order-n block, n >= 1 (used for the infinite
// branch, where caps are large and the literal iteration would be wasteful).
double dp_block(const std::vector<level_model>& levels,
                const std::vector<double>& z_pow, int n) {
    const level_model& Ln = levels[n];
    std::vector<double> g(Ln.cap + 2, 0.0);
    for (int i = Ln.cap; i >= 0; --i) g[i] = z_pow[i] + Ln.ratio(i) * g[i + 1];
    for (int k = n - 1; k >= 1; --k) {
        const level_model& L = levels[k];
        std::vector<double> h(L.cap + 2, 0.0);
        for (int i = L.cap; i >= 0; --i)
            h[i] = L.prefactor(i) * g[i] + L.ratio(i) * h[i + 1];
        g = std::move(h);
    }
    kahan_real acc;
    const level_model& L0 = levels[0];
    double rho = 1.0;
    for (int i = 0; i <= L0.cap; ++i) {
        acc.add(L0.prefactor(i) * rho * g[i]);
        rho *= L0.ratio(i);
    }
    return acc.value();
}

std::vector<double> powers_of(double z, int cap) {
    std::vector<double> p(cap + 1);
    p[0] = 1.0;
    for (int i = 1; i <= cap; ++i) p[i] = p[i - 1] * z;
    return p;
}

struct sum_result {
    double value;
    double last_block; // |T_{n_max} eps_tilde^{n_max}|
    double prev_block;
};

sum_result transfer_sum(const std::vector<level_model>& levels, double z,
                        double eps_tilde, int n_max, bool literal_nesting) {
    int cap_max = 0;
    for (const auto& L : levels) cap_max = std::max(cap_max, L.cap);
    const std::vector<double> z_pow = powers_of(z, cap_max);

    std::vector<std::vector<double>> rho;
    if (literal_nesting) {
        rho.resize(levels.size());
        for (std::size_t k = 0; k < levels.size(); ++k) {
            rho[k].resize(levels[k].cap + 1);
            rho[k][0] = 1.0;
            for (int i = 0; i < levels[k].cap; ++i)
                rho[k][i + 1] = rho[k][i] * levels[k].ratio(i);
        }
    }

    kahan_real acc;
    double eps_pow = 1.0;
    sum_result out{0.0, 0.0, 0.0};
    for (int n = 0; n <= n_max; ++n) {
        double block;
        if (n == 0) {
            kahan_real t0;
            double r = 1.0;
            for (int i = 0; i <= levels[0].cap; ++i) {
                t0.add(r * z_pow[i]);
                r *= levels[0].ratio(i);
            }
            block = t0.value();
        } else if (literal_nesting) {
            kahan_real tn;
            const level_model& L0 = levels[0];
            for (int i0 = 0; i0 <= L0.cap; ++i0)
                tn.add(L0.prefactor(i0) * rho[0][i0] *
                       nested_block(levels, rho, z_pow, n, 1, i0));
            block = tn.value();
        } else {
            block = dp_block(levels, z_pow, n);
        }
        const double contribution = block * eps_pow;
        acc.add(contribution);
        out.prev_block = out.last_block;
        out.last_block = std::abs(contribution);
        eps_pow *= eps_tilde;
    }
    out.value = acc.value();
    return out;
}

double outer_tail_estimate(const sum_result& s, int n_max) {
    if (n_max == 0) return 0.0;
    double est = s.last_block;
    if (s.prev_block > 0.0) {
        const double ratio = s.last_block / s.prev_block;
        est *= (ratio < 0.75) ? ratio / (1.0 - ratio) : 4.0;
    }
    return est;
}

} // namespace

void TerminationLadder::validate() const {
    if (betas.empty()) throw domain_error("TerminationLadder: needs at least one entry");
    int prev = 0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (betas[i] < 0) throw domain_error("TerminationLadder: entries must be nonnegative");
        if (i > 0 && betas[i] < prev)
            throw domain_error("TerminationLadder: entries must be nondecreasing");
        prev = betas[i];
    }
}

void TrfTruncation::validate() const {
    if (n_max < 0) throw domain_error("TrfTruncation: n_max must be nonnegative");
    if (inner_max < 1) throw domain_error("TrfTruncation: inner_max must be >= 1");
}

TrfValue trf_polynomial_eval(const TerminationLadder& ladder, double gamma,
                             double lambda, double omega_low, double x, double z,
                             double eps_tilde, const TrfTruncation& trunc) {
    ladder.validate();
    trunc.validate();
    if (ladder.size() < trunc.n_max + 1)
        throw domain_error("trf_polynomial_eval: ladder shorter than n_max + 1");

    const auto levels = build_levels(branch_kind::polynomial, trunc.n_max, &ladder,
                                     0.0, gamma, lambda, omega_low, false, 0);
    if (chain_count(levels) > 1e8)
        throw budget_error("trf_polynomial_eval: nested sum count exceeds 1e8");

    const sum_result s = transfer_sum(levels, z, eps_tilde, trunc.n_max, true);
    TrfValue out;
    out.value = ensure_finite(pow_indicial(x, lambda) * s.value, "trf_polynomial_eval");
    out.tail = std::abs(pow_indicial(x, lambda)) * outer_tail_estimate(s, trunc.n_max);
    out.converged = out.tail <= 1e-10 * std::max(std::abs(out.value), 1e-300);
    return out;
}

namespace {

sum_result infinite_sum_with_cap(const GchParams& p, double lambda, double x,
                                 int n_max, int cap) {
    const auto levels = build_levels(branch_kind::infinite, n_max, nullptr, p.a0(),
                                     p.gamma(), lambda, p.omega_low, false, cap);
    return transfer_sum(levels, p.z_of(x), p.eps_tilde_of(x), n_max, false);
}

} // namespace

TrfValue trf_infinite_eval(const GchParams& p, double lambda, double x,
                           const TrfTruncation& trunc) {
    trunc.validate();
    const double work = static_cast<double>(trunc.n_max + 1) * (trunc.n_max + 1) *
                        (trunc.inner_max + 1);
    if (work > 1e8)
        throw budget_error("trf_infinite_eval: truncation work exceeds budget");

    const sum_result full = infinite_sum_with_cap(p, lambda, x, trunc.n_max, trunc.inner_max);
    const double pref = pow_indicial(x, lambda);

    TrfValue out;
    out.value = ensure_finite(pref * full.value, "trf_infinite_eval");
    double tail = std::abs(pref) * outer_tail_estimate(full, trunc.n_max);
    if (trunc.inner_max >= 2) {
        const sum_result prev =
            infinite_sum_with_cap(p, lambda, x, trunc.n_max, trunc.inner_max - 1);
        tail += 2.0 * std::abs(pref) * std::abs(full.value - prev.value);
    }
    out.tail = tail;
    out.converged = out.tail <= 1e-10 * std::max(std::abs(out.value), 1e-300);
    return out;
}

namespace {

// Coefficient-level weights.  For the order-n block the coefficient of
// z^{i_n} eps_tilde^n is
//   U_n(i_n) = sum over chains i_0 <= ... <= i_{n-1} <= i_n of
//     P_0(i_0) rho_0(i_0) * prod_k [P_k(i_k) rho_k(i_k)/rho_k(i_{k-1})]
//     * rho_n(i_n)/rho_n(i_{n-1}),
// grown level by level through the running sum
//   W_k(i) = r_k(i-1) W_k(i-1) + A_{k-1}(i),   A_k(i) = P_k(i) W_k(i),
// so that U_n = W_n and no Pochhammer value is ever divided by.
std::vector<double> coefficients_from_levels(const std::vector<level_model>& levels,
                                             double mu, double eps, int m_max,
                                             int n_max) {
    const int i_cap = m_max / 2;
    std::vector<std::vector<double>> u(n_max + 1);

    const level_model& L0 = levels[0];
    const int c0 = std::min(i_cap, L0.cap);
    std::vector<double> a(c0 + 1); // A_{k-1} while building level k
    {
        u[0].resize(c0 + 1);
        double rho = 1.0;
        for (int i = 0; i <= c0; ++i) {
            u[0][i] = rho;
            a[i] = L0.prefactor(i) * rho;
            rho *= L0.ratio(i);
        }
    }
    for (int n = 1; n <= n_max; ++n) {
        const level_model& L = levels[n];
        const int cn = std::min(i_cap, L.cap);
        std::vector<double> w(cn + 1, 0.0);
        for (int i = 0; i <= cn; ++i) {
            double run = (i > 0) ? L.ratio(i - 1) * w[i - 1] : 0.0;
            if (i < static_cast<int>(a.size())) run += a[i];
            w[i] = run;
        }
        u[n] = w;
        a.resize(cn + 1);
        for (int i = 0; i <= cn; ++i) a[i] = L.prefactor(i) * w[i];
    }

    std::vector<double> coeffs(m_max + 1, 0.0);
    for (int m = 0; m <= m_max; ++m) {
        kahan_real acc;
        for (int n = 0; n <= std::min(m, n_max); ++n) {
            if ((m - n) % 2 != 0) continue;
            const int i = (m - n) / 2;
            if (i >= static_cast<int>(u[n].size())) continue;
            acc.add(std::pow(-0.5 * eps, n) * std::pow(-0.5 * mu, i) * u[n][i]);
        }
        coeffs[m] = acc.value();
    }
    return coeffs;
}

} // namespace

std::vector<double> trf_coefficients_infinite(const GchParams& p, double lambda,
                                              int m_max, const TrfTruncation& trunc) {
    trunc.validate();
    if (m_max < 0) throw domain_error("trf_coefficients: m_max must be nonnegative");
    if (m_max > 2 * trunc.inner_max + trunc.n_max)
        throw domain_error("trf_coefficients: m_max exceeds truncation support");
    const int n_levels = std::min(trunc.n_max, m_max);
    const auto levels = build_levels(branch_kind::infinite, n_levels, nullptr, p.a0(),
                                     p.gamma(), lambda, p.omega_low, false,
                                     std::min(trunc.inner_max, m_max / 2 + 1));
    return coefficients_from_levels(levels, p.mu, p.eps, m_max, n_levels);
}

std::vector<double> trf_coefficients_polynomial(const TerminationLadder& ladder,
                                                double gamma, double lambda,
                                                double omega_low, double mu,
                                                double eps, int m_max,
                                                const TrfTruncation& trunc) {
    ladder.validate();
    trunc.validate();
    if (m_max < 0) throw domain_error("trf_coefficients: m_max must be nonnegative");
    const int n_levels = std::min({trunc.n_max, m_max, ladder.size() - 1});
    const auto levels = build_levels(branch_kind::polynomial, n_levels, &ladder, 0.0,
                                     gamma, lambda, omega_low, false, 0);
    return coefficients_from_levels(levels, mu, eps, m_max, n_levels);
}

double qw_rw_eval(poly_kind kind, const TerminationLadder& ladder, double gamma,
                  double omega_low, double z, double eps_tilde,
                  const TrfTruncation& trunc) {
    ladder.validate();
    const int b0 = ladder.betas[0];
    if (kind == poly_kind::first) {
        const double pref = pochhammer(gamma, b0);
        return pref *
               trf_polynomial_eval(ladder, gamma, 0.0, omega_low, 1.0, z, eps_tilde, trunc)
                   .value;
    }
    // second kind: z^(1-gamma) prefactor, weights shifted by gamma -> 2-gamma;
    // the lambda = 1 - nu branch in disguise, with omega -> omega + 2(1-gamma).
    const double one_minus_gamma = 1.0 - gamma;
    if (std::abs(one_minus_gamma - std::round(one_minus_gamma)) > 1e-12 && !(z > 0.0))
        throw domain_error("qw_rw_eval: second kind needs z > 0 for non-integer 1 - gamma");
    const double pref = pochhammer(2.0 - gamma, b0);
    const double sum = trf_polynomial_eval(ladder, 2.0 - gamma, 0.0,
                                           omega_low + 2.0 * one_minus_gamma, 1.0, z,
                                           eps_tilde, trunc)
                           .value;
    return pow_indicial(z, one_minus_gamma) * pref * sum;
}

double qw_eval_unit_numerator(const TerminationLadder& ladder, double gamma, double z,
                              double eps_tilde_eff, const TrfTruncation& trunc) {
    ladder.validate();
    trunc.validate();
    if (ladder.size() < trunc.n_max + 1)
        throw domain_error("qw_eval_unit_numerator: ladder shorter than n_max + 1");
    const auto levels = build_levels(branch_kind::polynomial, trunc.n_max, &ladder, 0.0,
                                     gamma, 0.0, 0.0, true, 0);
    if (chain_count(levels) > 1e8)
        throw budget_error("qw_eval_unit_numerator: nested sum count exceeds 1e8");
    const sum_result s = transfer_sum(levels, z, eps_tilde_eff, trunc.n_max, true);
    return ensure_finite(pochhammer(gamma, ladder.betas[0]) * s.value,
                         "qw_eval_unit_numerator");
}

LadderCheck ladder_from_omega(const GchParams& p, double lambda, int levels) {
    if (levels < 1) throw domain_error("ladder_from_omega: need at least one level");
    LadderCheck out;
    out.consistent = true;
    const double base = -p.a0();
    for (int i = 0; i < levels; ++i) {
        const double raw = base - 0.5 * (i + lambda);
        out.raw.push_back(raw);
        const double nearest = std::round(raw);
        if (std::abs(raw - nearest) > 1e-9 || nearest < 0.0) out.consistent = false;
    }
    for (int i = 1; i < levels && out.consistent; ++i)
        if (out.raw[i] < out.raw[i - 1]) out.consistent = false;
    if (out.consistent) {
        for (double r : out.raw) out.ladder.betas.push_back(static_cast<int>(std::round(r)));
        out.note = "Omega admits a terminating ladder";
    } else {
        out.note = "no integer nondecreasing ladder solves Omega = -mu(2 beta_i + i + lambda)";
    }
    return out;
}

} // namespace gch
