#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gch/errors.hpp"
#include "gch/gch_core.hpp"
#include "gch/rng.hpp"
#include "gch/scalar_kernels.hpp"
#include "gch/trf_series.hpp"

using namespace gch;

namespace {

TrfTruncation trunc_of(int n_max, int inner = 40) {
    TrfTruncation t;
    t.n_max = n_max;
    t.inner_max = inner;
    return t;
}

} // namespace

TEST_CASE("ladder validation") {
    TerminationLadder ladder;
    CHECK_THROWS_AS(ladder.validate(), domain_error);
    ladder.betas = {2, 1};
    CHECK_THROWS_AS(ladder.validate(), domain_error);
    ladder.betas = {1, -2};
    CHECK_THROWS_AS(ladder.validate(), domain_error);
    ladder.betas = {1, 1, 3};
    CHECK_NOTHROW(ladder.validate());
}

TEST_CASE("terminated branch, order-0 hand sums") {
    TerminationLadder zero;
    zero.betas = {0};
    // only i_0 = 0 survives
    for (double x : {0.2, 1.0, 2.5})
        CHECK(trf_polynomial_eval(zero, 1.7, 0.0, 0.3, x, 0.4, 0.1, trunc_of(0)).value ==
              doctest::Approx(1.0).epsilon(1e-15));

    TerminationLadder one;
    one.betas = {1};
    // 1 - z/gamma at beta_0 = 1
    const double got =
        trf_polynomial_eval(one, 1.5, 0.0, 0.0, 1.0, 0.5, 0.0, trunc_of(0)).value;
    CHECK(got == doctest::Approx(1.0 - 0.5 / 1.5).epsilon(1e-15));
}

TEST_CASE("terminated branch agrees with a literal double-sum assembly") {
    // order 1, ladder (2, 3): hand-rolled nested loops straight from the
    // series definition
    TerminationLadder ladder;
    ladder.betas = {2, 3};
    const double gamma = 1.3, lambda = 0.0, omega = 0.8, z = 0.45, et = -0.31;

    const auto pochr = [](double base, int n) { return pochhammer(base, n); };
    double t0 = 0.0;
    for (int i0 = 0; i0 <= 2; ++i0)
        t0 += pochr(-2, i0) / (pochr(1.0, i0) * pochr(gamma, i0)) * std::pow(z, i0);
    double t1 = 0.0;
    for (int i0 = 0; i0 <= 2; ++i0) {
        const double pref = (i0 + 0.5 * omega) / ((i0 + 0.5) * (i0 - 0.5 + gamma));
        const double w0 = pochr(-2, i0) / (pochr(1.0, i0) * pochr(gamma, i0));
        double inner = 0.0;
        for (int i1 = i0; i1 <= 3; ++i1) {
            inner += pochr(-3, i1) * pochr(1.5, i0) * pochr(gamma + 0.5, i0) /
                     (pochr(-3, i0) * pochr(1.5, i1) * pochr(gamma + 0.5, i1)) *
                     std::pow(z, i1);
        }
        t1 += pref * w0 * inner;
    }
    const double expected = t0 + t1 * et;
    const double got =
        trf_polynomial_eval(ladder, gamma, lambda, omega, 1.0, z, et, trunc_of(1)).value;
    CHECK(got == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("terminated branch coefficient extraction matches the evaluator") {
    // two independent routes through the same sums: literal nesting vs the
    // forward coefficient recursion
    TerminationLadder ladder;
    ladder.betas = {2, 2, 4, 4};
    const double gamma = 1.35, omega = 0.6, mu = -2.0, eps = 0.8;
    const auto coeffs =
        trf_coefficients_polynomial(ladder, gamma, 0.0, omega, mu, eps, 11, trunc_of(3));
    for (double x : {0.3, 0.7}) {
        double horner = 0.0;
        for (int m = 11; m >= 0; --m) horner = horner * x + coeffs[m];
        const double direct = trf_polynomial_eval(ladder, gamma, 0.0, omega, x,
                                                  -0.5 * mu * x * x, -0.5 * eps * x,
                                                  trunc_of(3))
                                  .value;
        // the evaluator keeps all powers the ladder supports; degree bound
        // says those are <= 3 + 2*4 = 11, so the polynomials must agree
        CHECK(direct == doctest::Approx(horner).epsilon(1e-13));
    }
}

TEST_CASE("ladder consistency against the termination condition") {
    GchParams p;
    p.mu = -2.0;
    p.eps = 0.3;
    p.nu = 2.0;
    p.omega_low = 1.0;
    p.omega_cap = -p.mu * (2.0 * 2.0 + 0.0); // beta_0 = 2 at level 0, lambda = 0

    const LadderCheck one = ladder_from_omega(p, 0.0, 1);
    CHECK(one.consistent);
    CHECK(one.ladder.betas[0] == 2);

    // beyond level 0 the condition demands beta_i = beta_0 - i/2: neither
    // integral for odd i nor nondecreasing, so no assignment exists
    const LadderCheck more = ladder_from_omega(p, 0.0, 3);
    CHECK_FALSE(more.consistent);
    CHECK(more.raw[1] == doctest::Approx(1.5));

    // with the level-0 ladder the x-expansion matches the recurrence exactly
    // as far as the terminated weights agree with the infinite ones: the
    // constant, x^1 and x^2 coefficients
    TerminationLadder flat;
    flat.betas = {2, 2, 2};
    const auto poly =
        trf_coefficients_polynomial(flat, p.gamma(), 0.0, p.omega_low, p.mu, p.eps, 8,
                                    trunc_of(2));
    const SeriesCoeffs frob = frobenius_coeffs(p, 0.0, 8);
    for (int m = 0; m <= 2; ++m)
        CHECK(poly[m] == doctest::Approx(frob.c[m]).epsilon(1e-12));
}

TEST_CASE("infinite branch trivials") {
    GchParams p;
    p.mu = -2.0;
    p.eps = 0.0;
    p.nu = 1.6;
    p.omega_cap = 1.1;
    p.omega_low = 0.7;
    // x = 0: z = eps_tilde = 0
    CHECK(trf_infinite_eval(p, 0.0, 0.0, trunc_of(6)).value ==
          doctest::Approx(1.0).epsilon(1e-15));
    // eps = 0 collapses to the Kummer kernel
    for (double x : {0.3, 0.7}) {
        const double got = trf_infinite_eval(p, 0.0, x, trunc_of(6, 60)).value;
        const double expected = kummer_m(p.a0(), p.gamma(), p.z_of(x));
        CHECK(got == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("infinite branch evaluation matches the recurrence oracle") {
    GchParams p;
    p.mu = -2.0;
    p.eps = 0.4;
    p.nu = 1.6;
    p.omega_cap = 1.1;
    p.omega_low = 0.7;
    const SeriesCoeffs sc = frobenius_coeffs(p, 0.0, 60);
    const TrfValue v = trf_infinite_eval(p, 0.0, 0.25, trunc_of(12, 40));
    CHECK(v.converged);
    CHECK(v.value == doctest::Approx(eval_series(sc, 0.25).value).epsilon(1e-9));
}

TEST_CASE("infinite branch second kind matches the lambda = 1-nu oracle") {
    GchParams p;
    p.mu = -1.4;
    p.eps = 0.5;
    p.nu = 0.3;
    p.omega_cap = 0.9;
    p.omega_low = -0.4;
    const double lambda = 1.0 - p.nu;
    const SeriesCoeffs sc = frobenius_coeffs(p, lambda, 60);
    for (double x : {0.2, 0.45}) {
        const TrfValue v = trf_infinite_eval(p, lambda, x, trunc_of(14, 40));
        CHECK(v.value == doctest::Approx(eval_series(sc, x).value).epsilon(1e-9));
    }
}

TEST_CASE("coefficient oracle equivalence across 50 seeded draws") {
    rng gen(2024);
    int done = 0;
    while (done < 50) {
        GchParams p;
        p.mu = gen.uniform(-3.0, 3.0);
        if (std::abs(p.mu) < 0.4) continue;
        p.eps = gen.uniform(-3.0, 3.0);
        p.nu = gen.uniform(-3.0, 3.0);
        p.omega_cap = gen.uniform(-3.0, 3.0);
        p.omega_low = gen.uniform(-3.0, 3.0);
        if (p.nu < 0.05 && std::abs(p.nu - std::round(p.nu)) < 0.05) continue;
        const double g = p.gamma();
        if (std::abs(2.0 * g - std::round(2.0 * g)) < 0.05) continue;
        ++done;

        const auto trf = trf_coefficients_infinite(p, 0.0, 20, trunc_of(24, 24));
        const SeriesCoeffs frob = frobenius_coeffs(p, 0.0, 20);
        for (int m = 0; m <= 20; ++m) {
            const double scale =
                std::max({std::abs(trf[m]), std::abs(frob.c[m]), 1e-280});
            CHECK(std::abs(trf[m] - frob.c[m]) / scale <= 1e-10);
        }
    }
}

TEST_CASE("evenness and coefficient trivials") {
    GchParams p;
    p.mu = 1.3;
    p.eps = 0.0;
    p.nu = 0.8;
    p.omega_cap = -0.7;
    p.omega_low = 0.2;
    const auto coeffs = trf_coefficients_infinite(p, 0.0, 15, trunc_of(16, 16));
    CHECK(coeffs[0] == 1.0);
    for (int m = 1; m <= 15; m += 2) CHECK(coeffs[m] == 0.0);
}

TEST_CASE("qw and rw wrappers") {
    TerminationLadder zero;
    zero.betas = {0};
    CHECK(qw_rw_eval(poly_kind::first, zero, 2.2, 0.5, 0.8, 0.1, trunc_of(0)) ==
          doctest::Approx(1.0).epsilon(1e-15));

    TerminationLadder one;
    one.betas = {1};
    CHECK(qw_rw_eval(poly_kind::first, one, 1.5, 0.0, 0.5, 0.0, trunc_of(0)) ==
          doctest::Approx(1.0).epsilon(1e-14));

    CHECK(qw_rw_eval(poly_kind::second, zero, 0.5, 0.0, 4.0, 0.0, trunc_of(0)) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(qw_rw_eval(poly_kind::second, zero, 0.5, 0.0, -4.0, 0.0, trunc_of(0)),
                    domain_error);
}

TEST_CASE("unit-numerator wrapper is the omega -> infinity limit") {
    TerminationLadder ladder;
    ladder.betas = {2, 2, 3};
    const double gamma = 1.4, z = 0.5;
    const double et_eff = 0.37;
    const double limit = qw_eval_unit_numerator(ladder, gamma, z, et_eff, trunc_of(2));
    // same evaluation with huge omega and eps_tilde = 2 et_eff / omega
    const double omega = 1e9;
    const double approx = qw_rw_eval(poly_kind::first, ladder, gamma, omega, z,
                                     2.0 * et_eff / omega, trunc_of(2));
    CHECK(limit == doctest::Approx(approx).epsilon(1e-7));
}

TEST_CASE("nested budget guard") {
    TerminationLadder big;
    big.betas.assign(12, 400);
    CHECK_THROWS_AS(trf_polynomial_eval(big, 1.3, 0.0, 0.5, 1.0, 0.5, 0.1, trunc_of(11)),
                    budget_error);
}

TEST_CASE("pochhammer-denominator poles are refused") {
    TerminationLadder ladder;
    ladder.betas = {3};
    // gamma + lambda/2 hits a nonpositive integer inside the range
    CHECK_THROWS_AS(trf_polynomial_eval(ladder, -1.0, 0.0, 0.5, 1.0, 0.5, 0.1, trunc_of(0)),
                    domain_error);
}

TEST_CASE("ladder shorter than n_max is refused") {
    TerminationLadder ladder;
    ladder.betas = {1, 2};
    CHECK_THROWS_AS(trf_polynomial_eval(ladder, 1.3, 0.0, 0.5, 1.0, 0.5, 0.1, trunc_of(2)),
                    domain_error);
}
