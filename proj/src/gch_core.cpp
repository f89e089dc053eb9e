#include "gch/gch_core.hpp"

#include <cmath>
#include <string>

#include "gch/errors.hpp"
#include "gch/kahan.hpp"

namespace gch {

namespace {

bool lambda_is_integer(double lambda) {
    return std::abs(lambda - std::round(lambda)) < 1e-12;
}

} // namespace

// x^lambda with the domain rule for fractional exponents.
double pow_indicial(double x, double lambda) {
    if (lambda == 0.0) return 1.0;
    if (!lambda_is_integer(lambda) && x <= 0.0)
        throw domain_error("eval_series: x must be positive for non-integer lambda");
    if (x == 0.0) {
        if (lambda > 0.0) return 0.0;
        throw domain_error("eval_series: x^lambda diverges at x = 0");
    }
    if (lambda_is_integer(lambda)) return std::pow(x, std::round(lambda));
    return std::pow(x, lambda);
}

double GchParams::a0() const {
    if (mu == 0.0) throw domain_error("GchParams: Omega/(2 mu) requires mu != 0");
    return omega_cap / (2.0 * mu);
}

IndicialRoots indicial_roots(const GchParams& p) {
    IndicialRoots r;
    r.second = 1.0 - p.nu;
    r.degenerate = (p.nu == 1.0);
    r.near_degenerate = std::abs(1.0 - p.nu) < 1e-8;
    return r;
}

SeriesCoeffs frobenius_coeffs(const GchParams& p, double lambda, int n_max) {
    if (n_max < 0) throw domain_error("frobenius_coeffs: n_max must be nonnegative");
    SeriesCoeffs sc;
    sc.lambda = lambda;
    sc.params = p;
    sc.c.resize(n_max + 1);
    sc.c[0] = 1.0;
    double cm1 = 1.0, cm2 = 0.0; // c_{m-1}, c_{m-2}
    for (int m = 1; m <= n_max; ++m) {
        const double denom = (m + lambda) * (m + lambda - 1.0 + p.nu);
        if (std::abs(denom) < 1e-12)
            throw resonance_error(
                m, "frobenius_coeffs: resonant denominator at m = " + std::to_string(m));
        const double rhs = -p.eps * (m - 1.0 + lambda + p.omega_low) * cm1 -
                           (p.mu * (m - 2.0 + lambda) + p.omega_cap) * cm2;
        sc.c[m] = rhs / denom;
        cm2 = cm1;
        cm1 = sc.c[m];
    }
    return sc;
}

SeriesValue eval_series(const SeriesCoeffs& sc, double x) {
    const double pref = pow_indicial(x, sc.lambda);
    kahan_real acc;
    double xp = 1.0;
    for (std::size_t m = 0; m < sc.c.size(); ++m) {
        acc.add(sc.c[m] * xp);
        xp *= x;
    }
    const int n = static_cast<int>(sc.c.size()) - 1;
    SeriesValue out;
    out.value = ensure_finite(pref * acc.value(), "eval_series");
    out.tail = 2.0 * std::abs(pref * sc.c[n] * std::pow(std::abs(x), n));
    return out;
}

SeriesJet eval_series_jet(const SeriesCoeffs& sc, double x) {
    // termwise: d/dx c_m x^(m+lambda) = c_m (m+lambda) x^(m+lambda-1)
    const double lambda = sc.lambda;
    if (!lambda_is_integer(lambda) && x <= 0.0)
        throw domain_error("eval_series_jet: x must be positive for non-integer lambda");
    kahan_real y, dy, d2y;
    for (std::size_t m = 0; m < sc.c.size(); ++m) {
        const double e = m + lambda;
        const double base = sc.c[m] * std::pow(x, e);
        y.add(base);
        if (x != 0.0) {
            dy.add(base * e / x);
            d2y.add(base * e * (e - 1.0) / (x * x));
        } else {
            // only integer lambda reaches here
            if (e == 1.0) dy.add(sc.c[m]);
            if (e == 2.0) d2y.add(2.0 * sc.c[m]);
        }
    }
    return SeriesJet{ensure_finite(y.value(), "eval_series_jet"), dy.value(),
                     d2y.value()};
}

double ode_residual(const GchParams& p, double y, double dy, double d2y, double x) {
    return x * d2y + (p.mu * x * x + p.eps * x + p.nu) * dy +
           (p.omega_cap * x + p.eps * p.omega_low) * y;
}

GchParams bch_to_gch(const BchCanonicalParams& b) {
    if (b.beta == 0.0)
        throw domain_error("bch_to_gch: beta must be nonzero (the omega map divides by beta)");
    GchParams p;
    p.mu = -2.0;
    p.eps = -b.beta;
    p.nu = 1.0 + b.alpha;
    p.omega_cap = b.gamma_c - b.alpha - 2.0;
    p.omega_low = 0.5 * (b.delta / b.beta + 1.0 + b.alpha);
    return p;
}

} // namespace gch
