#include "gch/scalar_kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "gch/errors.hpp"
#include "gch/kahan.hpp"

namespace gch {

double ensure_finite(double value, const char* what) {
    if (!std::isfinite(value))
        throw convergence_error(std::string(what) + ": non-finite result");
    return value;
}

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

bool is_nonpositive_integer(double x, double tol = 1e-12) {
    return x <= tol && std::abs(x - std::round(x)) < tol;
}

} // namespace

double log_gamma(double x) { return std::lgamma(x); }

double pochhammer(double x, int n) {
    if (n < 0) throw domain_error("pochhammer: count must be nonnegative");
    if (n == 0) return 1.0;
    // A vanishing factor x + k makes the whole product exactly 0; the direct
    // product preserves that, log-Gamma differences would not.
    if (n <= 64 || x <= 0.0) {
        double prod = 1.0;
        for (int k = 0; k < n; ++k) {
            const double factor = x + k;
            if (factor == 0.0) return 0.0;
            prod *= factor;
            if (x <= 0.0 && x + k < 0.0 && x + k + 1 > 0.0 && n > 64) {
                // remaining factors are all positive: switch to log-Gamma
                const double rest =
                    std::exp(log_gamma(x + n) - log_gamma(x + k + 1));
                return prod * rest;
            }
        }
        return prod;
    }
    return ensure_finite(std::exp(log_gamma(x + n) - log_gamma(x)), "pochhammer");
}

double beta_integral(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw domain_error("beta_integral: requires p > 0 and q > 0");
    return ensure_finite(std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q)),
                         "beta_integral");
}

double kummer_m(double a, double b, double z) {
    if (is_nonpositive_integer(b))
        throw domain_error("kummer_m: b must not be a nonpositive integer");
    // reflect every negative argument: direct summation at z = -10 already
    // loses ~8 digits to cancellation (condition ~ e^(2|z|))
    if (z < 0.0) return ensure_finite(std::exp(z) * kummer_m(b - a, b, -z), "kummer_m");

    kahan_real acc;
    double term = 1.0;
    acc.add(term);
    int below = 0;
    for (int n = 0; n < 10000; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1));
        acc.add(term);
        if (std::abs(term) <= 1e-16 * std::abs(acc.value())) {
            if (++below >= 3) return ensure_finite(acc.value(), "kummer_m");
        } else {
            below = 0;
        }
        if (term == 0.0) return acc.value(); // terminated polynomial case
    }
    throw convergence_error("kummer_m: series did not converge in 10000 terms");
}

double chp_eval(poly_kind kind, int degree, double gamma, double z) {
    if (degree < 0) throw domain_error("chp_eval: degree must be nonnegative");
    const double weight = (kind == poly_kind::first) ? gamma : 2.0 - gamma;
    if (degree > 0 && is_nonpositive_integer(weight))
        throw domain_error(kind == poly_kind::first
                               ? "chp_eval: gamma is a nonpositive integer"
                               : "chp_eval: 2 - gamma is a nonpositive integer");

    kahan_real acc;
    double term = 1.0;
    acc.add(term);
    for (int n = 0; n < degree; ++n) {
        term *= (static_cast<double>(-degree) + n) * z / ((weight + n) * (n + 1));
        acc.add(term);
    }
    return ensure_finite(pochhammer(weight, degree) * acc.value(), "chp_eval");
}

double erf(double x) {
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    if (ax >= 6.0) return x > 0 ? 1.0 : -1.0;

    double result;
    if (ax <= 2.5) {
        // erf(x) = 2/sqrt(pi) e^(-x^2) sum 2^n x^(2n+1) / (1*3*...*(2n+1)):
        // all terms positive, no cancellation
        kahan_real sum;
        double term = ax;
        for (int n = 0; n < 200; ++n) {
            sum.add(term);
            term *= 2.0 * ax * ax / (2 * n + 3);
            if (term < 1e-18 * sum.value()) break;
        }
        result = 2.0 / std::sqrt(pi) * std::exp(-ax * ax) * sum.value();
    } else {
        // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + (2/2)/(x + ...)))
        // evaluated by the modified Lentz algorithm.
        const double tiny = 1e-300;
        double f = ax, c = ax, d = 0.0;
        for (int k = 1; k <= 300; ++k) {
            const double coeff = 0.5 * k;
            d = ax + coeff * d;
            if (std::abs(d) < tiny) d = tiny;
            c = ax + coeff / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = c * d;
            f *= delta;
            if (std::abs(delta - 1.0) < 1e-16) break;
        }
        const double erfc = std::exp(-ax * ax) / (std::sqrt(pi) * f);
        result = 1.0 - erfc;
    }
    return x > 0 ? result : -result;
}

} // namespace gch
