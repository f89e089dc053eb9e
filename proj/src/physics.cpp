#include "gch/physics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gch/errors.hpp"
#include "gch/kahan.hpp"
#include "gch/quadrature.hpp"
#include "gch/scalar_kernels.hpp"

namespace gch {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

TerminationLadder flat_ladder(int beta, int levels) {
    if (beta < 0) throw domain_error("wavefunction: beta must be nonnegative");
    TerminationLadder ladder;
    ladder.betas.assign(levels, beta);
    return ladder;
}

} // namespace

ConfinementModel confinement_from_potential(double a, double b, double c, double mass,
                                            double hbar) {
    if (!(c > 0.0))
        throw domain_error("confinement_from_potential: needs c > 0 for a bound envelope");
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw domain_error("confinement_from_potential: mass and hbar must be positive");
    ConfinementModel m;
    m.a = a;
    m.mass = mass;
    m.hbar = hbar;
    m.alpha_F = std::sqrt(2.0 * mass * c) / hbar;
    m.beta_F = mass * b / (hbar * hbar * m.alpha_F);
    return m;
}

double QuantumDotModel::gamma_tilde() const {
    const double g2 = eff_mass * omega_conf / hbar;
    if (!(g2 > 0.0))
        throw domain_error("QuantumDotModel: mass * omega / hbar must be positive");
    return std::sqrt(g2);
}

double oscillator_eigenvalue(const OscillatorModel& m, int i, int beta) {
    if (i < 0 || beta < 0) throw domain_error("oscillator_eigenvalue: indices must be nonnegative");
    return 2.0 * beta + i + m.l_m + 1.0;
}

double confinement_energy(const ConfinementModel& m, int i, int beta, int l) {
    if (i < 0 || beta < 0 || l < 0)
        throw domain_error("confinement_energy: indices must be nonnegative");
    const double shell = beta + 0.5 * (i + l + 1.5);
    return (m.hbar * m.hbar / (2.0 * m.mass)) *
           (4.0 * m.alpha_F * shell - m.beta_F * m.beta_F);
}

double qdot_energy(const QuantumDotModel& m, int i, int beta) {
    if (i < 0 || beta < 0) throw domain_error("qdot_energy: indices must be nonnegative");
    const double sm = m.sigma * std::abs(m.m_quantum);
    return m.hbar * m.omega_conf * (2.0 * beta + i + sm + 0.5) +
           0.5 * m.m_quantum * m.hbar * m.omega_cyc;
}

double wavefunction_eval(const OscillatorModel& m, int i, int beta, double r,
                         const TrfTruncation& trunc) {
    (void)i; // enters only the eigenvalue; the series ladder is the flat one
    if (!(r > 0.0)) throw domain_error("wavefunction: r must be positive");
    if (!(m.omega_c > 0.0)) throw domain_error("oscillator: coupling must be positive");
    const double gamma = m.l_m + 1.5;
    const double omega_gch = m.l_m + 1.0;
    const double z = r * r / (2.0 * m.omega_c);
    const double eps_tilde = -r / (2.0 * m.omega_c);
    const double qw = qw_rw_eval(poly_kind::first, flat_ladder(beta, trunc.n_max + 1),
                                 gamma, omega_gch, z, eps_tilde, trunc);
    return std::pow(r, m.l_m + 1.0) *
           std::exp(-(r - 1.0) * (r - 1.0) / (2.0 * m.omega_c)) * qw;
}

double wavefunction_eval(const ConfinementModel& m, int i, int beta, int l, double r,
                         const TrfTruncation& trunc) {
    (void)i;
    if (!(r > 0.0)) throw domain_error("wavefunction: r must be positive");
    if (m.beta_F == 0.0)
        throw domain_error("confinement: beta_F must be nonzero (enters the omega map)");
    const double gamma = l + 1.5;
    const double omega_gch = -(m.mass * m.a) / (m.hbar * m.hbar * m.beta_F) + l + 1.0;
    const double z = m.alpha_F * r * r;
    const double eps_tilde = -m.beta_F * r;
    const double qw = qw_rw_eval(poly_kind::first, flat_ladder(beta, trunc.n_max + 1),
                                 gamma, omega_gch, z, eps_tilde, trunc);
    return std::pow(r, l + 1.0) *
           std::exp(-0.5 * m.alpha_F * r * r - m.beta_F * r) * qw;
}

std::complex<double> wavefunction_eval(const QuantumDotModel& m, int i, int beta,
                                       double r, std::optional<double> phi,
                                       const TrfTruncation& trunc) {
    (void)i;
    if (!(r > 0.0)) throw domain_error("wavefunction: r must be positive");
    const double gt = m.gamma_tilde();
    const double sm = m.sigma * std::abs(m.m_quantum);
    const double gamma = sm + 1.0;
    const double z = gt * gt * r * r;
    // vanishing first-derivative coupling with finite eps*omega: the transfer
    // numerators collapse to 1 and the expansion variable becomes
    // mu e^2 r / (2 eps_inf hbar^2)
    const double eps_tilde_eff =
        m.eff_mass * m.charge * m.charge * r / (2.0 * m.eps_inf * m.hbar * m.hbar);
    const double qw = qw_eval_unit_numerator(flat_ladder(beta, trunc.n_max + 1), gamma,
                                             z, eps_tilde_eff, trunc);
    const double radial = std::pow(z, 0.5 * sm) * std::exp(-0.5 * z) * qw;
    if (!phi) return radial;
    return radial * std::exp(std::complex<double>(0.0, m.m_quantum * *phi));
}

double normalization_constant(const std::function<double(double)>& psi,
                              radial_measure measure, double r_max, int nodes) {
    if (!(r_max > 0.0)) throw domain_error("normalize: r_max must be positive");
    if (nodes < 16) throw domain_error("normalize: need at least 16 nodes");
    const quad_rule rule = gauss_legendre(nodes, 0.0, r_max);
    double peak = 0.0;
    kahan_real norm2;
    for (int k = 0; k < nodes; ++k) {
        const double r = rule.nodes[k];
        const double p = psi(r);
        peak = std::max(peak, std::abs(p));
        const double meas = (measure == radial_measure::polar) ? r : 1.0;
        norm2.add(rule.weights[k] * p * p * meas);
    }
    const double tail = std::abs(psi(r_max));
    if (tail > 1e-12 * peak)
        throw domain_error("normalize: wave function has not decayed to 1e-12 of its "
                           "peak by r_max; increase r_max");
    if (!(norm2.value() > 0.0))
        throw domain_error("normalize: vanishing norm");
    return 1.0 / std::sqrt(norm2.value());
}

double normalize(const OscillatorModel& m, int i, int beta, double r_max, int nodes,
                 const TrfTruncation& trunc) {
    return normalization_constant(
        [&](double r) { return wavefunction_eval(m, i, beta, r, trunc); },
        radial_measure::line, r_max, nodes);
}

double normalize(const ConfinementModel& m, int i, int beta, int l, double r_max,
                 int nodes, const TrfTruncation& trunc) {
    return normalization_constant(
        [&](double r) { return wavefunction_eval(m, i, beta, l, r, trunc); },
        radial_measure::line, r_max, nodes);
}

double normalize(const QuantumDotModel& m, int i, int beta, double r_max, int nodes,
                 const TrfTruncation& trunc) {
    return normalization_constant(
        [&](double r) {
            return wavefunction_eval(m, i, beta, r, std::nullopt, trunc).real();
        },
        radial_measure::polar, r_max, nodes);
}

double asymptotic_form(double mu, double x) {
    const double arg = -mu * x * x;
    if (arg < 0.0)
        throw domain_error("asymptotic_form: requires -mu x^2 >= 0");
    return 1.0 + std::sqrt(0.5 * pi * arg) * gch::erf(std::sqrt(0.5 * arg)) *
                     std::exp(0.5 * arg);
}

QdotCorrespondence qdot_correspondence(const QuantumDotModel& m, int i, int beta) {
    QdotCorrespondence c;
    const double sm = m.sigma * std::abs(m.m_quantum);
    c.a = 2.0 * sm + 1.0;
    const double er = qdot_energy(m, i, beta);
    c.eps_param = (2.0 * er - m.m_quantum * m.hbar * m.omega_cyc) /
                  (m.hbar * m.omega_conf);
    c.d = c.eps_param - c.a;
    c.u = 2.0 * m.eff_mass * m.charge * m.charge /
          (m.eps_inf * m.hbar * m.hbar * m.gamma_tilde());
    c.gch = GchParams{-2.0, 0.0, c.a, c.d, 0.0};
    return c;
}

} // namespace gch
