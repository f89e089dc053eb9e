#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gch/errors.hpp"
#include "gch/physics.hpp"
#include "gch/scalar_kernels.hpp"

using namespace gch;

namespace {

TrfTruncation trunc_of(int n_max) {
    TrfTruncation t;
    t.n_max = n_max;
    return t;
}

} // namespace

TEST_CASE("oscillator eigenvalues") {
    OscillatorModel m{0, 1.0};
    CHECK(oscillator_eigenvalue(m, 0, 0) == 1.0);
    OscillatorModel m2{3, 1.0};
    CHECK(oscillator_eigenvalue(m2, 1, 2) == 9.0);
    for (int beta = 0; beta < 4; ++beta)
        CHECK(oscillator_eigenvalue(m, 0, beta + 1) - oscillator_eigenvalue(m, 0, beta) ==
              2.0);
}

TEST_CASE("confinement energies") {
    ConfinementModel m;
    m.alpha_F = 1.0;
    m.beta_F = 0.0;
    CHECK(confinement_energy(m, 0, 0, 0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(confinement_energy(m, 1, 1, 0) == doctest::Approx(4.5).epsilon(1e-15));
    m.beta_F = 0.7;
    for (int beta = 0; beta < 4; ++beta)
        CHECK(confinement_energy(m, 0, beta + 1, 1) - confinement_energy(m, 0, beta, 1) ==
              doctest::Approx(2.0 * m.alpha_F).epsilon(1e-14));
}

TEST_CASE("confinement envelope helper") {
    const ConfinementModel m = confinement_from_potential(0.4, 1.2, 2.0);
    CHECK(m.alpha_F == doctest::Approx(2.0).epsilon(1e-14));       // sqrt(2*2)
    CHECK(m.beta_F == doctest::Approx(1.2 / 2.0).epsilon(1e-14)); // b/alpha_F
    CHECK_THROWS_AS(confinement_from_potential(0.0, 1.0, -1.0), domain_error);
}

TEST_CASE("quantum dot energies") {
    QuantumDotModel m;
    m.omega_conf = 1.0;
    CHECK(qdot_energy(m, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    QuantumDotModel m2;
    m2.omega_conf = 1.0;
    m2.omega_cyc = 0.5;
    m2.sigma = 1.0;
    m2.m_quantum = -2;
    CHECK(qdot_energy(m2, 0, 1) == doctest::Approx(4.0).epsilon(1e-15));
    for (int beta = 0; beta < 4; ++beta)
        CHECK(qdot_energy(m2, 0, beta + 1) - qdot_energy(m2, 0, beta) ==
              doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("oscillator wave function matches a literal assembly") {
    OscillatorModel m{0, 1.0};
    const int beta = 1;
    const double r = 1.0;
    const double gamma = m.l_m + 1.5;
    const double omega = m.l_m + 1.0;
    const double z = r * r / (2.0 * m.omega_c);
    const double et = -r / (2.0 * m.omega_c);

    // flat ladder (1, 1), transfer orders 0 and 1, straight from the sums
    double t0 = 0.0;
    for (int i0 = 0; i0 <= beta; ++i0)
        t0 += pochhammer(-beta, i0) / (pochhammer(1.0, i0) * pochhammer(gamma, i0)) *
              std::pow(z, i0);
    double t1 = 0.0;
    for (int i0 = 0; i0 <= beta; ++i0) {
        const double pref = (i0 + 0.5 * omega) / ((i0 + 0.5) * (i0 - 0.5 + gamma));
        const double w0 =
            pochhammer(-beta, i0) / (pochhammer(1.0, i0) * pochhammer(gamma, i0));
        double inner = 0.0;
        for (int i1 = i0; i1 <= beta; ++i1)
            inner += pochhammer(-beta, i1) * pochhammer(1.5, i0) *
                     pochhammer(gamma + 0.5, i0) /
                     (pochhammer(-beta, i0) * pochhammer(1.5, i1) *
                      pochhammer(gamma + 0.5, i1)) *
                     std::pow(z, i1);
        t1 += pref * w0 * inner;
    }
    const double qw = pochhammer(gamma, beta) * (t0 + t1 * et);
    const double expected =
        std::pow(r, m.l_m + 1.0) * std::exp(-(r - 1.0) * (r - 1.0) / (2.0 * m.omega_c)) * qw;

    CHECK(wavefunction_eval(m, 0, beta, r, trunc_of(1)) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("wave functions vanish at the origin with the advertised powers") {
    TrfTruncation t = trunc_of(4);
    OscillatorModel osc{0, 1.0};
    const double near = wavefunction_eval(osc, 0, 0, 1e-8, t);
    CHECK(std::abs(near) < 1e-7); // r^(l+1) prefactor

    QuantumDotModel qd;
    qd.m_quantum = 2;
    CHECK(std::abs(wavefunction_eval(qd, 0, 1, 1e-8, std::nullopt, t)) < 1e-12);
    CHECK_THROWS_AS(wavefunction_eval(osc, 0, 0, -0.5, t), domain_error);
}

TEST_CASE("quantum dot phase factor") {
    QuantumDotModel qd;
    qd.m_quantum = 3;
    const TrfTruncation t = trunc_of(2);
    const double base = wavefunction_eval(qd, 0, 1, 0.7, std::nullopt, t).real();
    const std::complex<double> with_phase = wavefunction_eval(qd, 0, 1, 0.7, 0.4, t);
    CHECK(std::abs(with_phase - base * std::exp(std::complex<double>(0.0, 3 * 0.4))) <
          1e-14);
}

TEST_CASE("normalization") {
    // pure Gaussian on the line measure: N = (2/sqrt(pi))^(1/2)
    const double n = normalization_constant(
        [](double r) { return std::exp(-0.5 * r * r); }, radial_measure::line, 14.0, 400);
    CHECK(n == doctest::Approx(1.0 / std::sqrt(std::sqrt(M_PI) / 2.0)).epsilon(1e-12));

    // scaling: N(2 psi) = N(psi)/2
    const double half = normalization_constant(
        [](double r) { return 2.0 * std::exp(-0.5 * r * r); }, radial_measure::line, 14.0,
        400);
    CHECK(half == doctest::Approx(0.5 * n).epsilon(1e-13));

    // non-decayed tail is refused
    CHECK_THROWS_AS(normalization_constant([](double) { return 1.0; },
                                           radial_measure::line, 5.0, 64),
                    domain_error);
}

TEST_CASE("normalization idempotence for a model state") {
    OscillatorModel m{0, 1.0};
    const TrfTruncation t = trunc_of(4);
    const double n = normalize(m, 0, 1, 16.0, 600, t);
    const double renorm = normalization_constant(
        [&](double r) { return n * wavefunction_eval(m, 0, 1, r, t); },
        radial_measure::line, 16.0, 600);
    CHECK(renorm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("asymptotic divergence form") {
    CHECK(asymptotic_form(-2.0, 0.0) == 1.0);
    // grows like sqrt(pi z) e^z: strictly increasing in x for mu < 0
    CHECK(asymptotic_form(-2.0, 2.0) > asymptotic_form(-2.0, 1.0));
    CHECK(asymptotic_form(-2.0, 1.0) ==
          doctest::Approx(1.0 + std::sqrt(M_PI) * gch::erf(1.0) * std::exp(1.0))
              .epsilon(1e-14));
    CHECK_THROWS_AS(asymptotic_form(2.0, 1.0), domain_error);
}

TEST_CASE("quantum dot correspondence") {
    QuantumDotModel qd;
    qd.sigma = 1.0;
    qd.m_quantum = -2;
    qd.omega_conf = 1.0;
    qd.omega_cyc = 0.5;
    const QdotCorrespondence c = qdot_correspondence(qd, 1, 2);
    CHECK(c.a == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(c.d == doctest::Approx(4.0 * 2 + 2.0 * 1).epsilon(1e-13));
    CHECK(c.gch.mu == -2.0);
    CHECK(c.gch.eps == 0.0);
    CHECK(c.gch.nu == doctest::Approx(c.a));
    // termination: Omega = -mu (2 beta + i)
    CHECK(c.gch.omega_cap == doctest::Approx(2.0 * (2.0 * 2 + 1)).epsilon(1e-13));
}
