#ifndef GCH_PHYSICS_HPP
#define GCH_PHYSICS_HPP

#include <complex>
#include <functional>
#include <optional>

#include "gch/gch_core.hpp"
#include "gch/trf_series.hpp"

namespace gch {

// Radial equation with the (r-1)^2 well:
//   psi'' + [ (2 lm_eigen + 1)/(2 w) - (r-1)^2/(4 w^2) - l(l+1)/r^2 ] psi = 0.
// omega_c is the coupling parameter; the transfer-series omega is l_m + 1 and
// gamma = l_m + 3/2.
struct OscillatorModel {
    int l_m = 0;
    double omega_c = 1.0;
};

// Confinement potential -a/r + b r + c r^2 in reduced form; alpha_F, beta_F
// are the Gaussian/exponential envelope coefficients of the ansatz
// psi = r^(l+1) exp(-alpha_F r^2/2 - beta_F r) F.
struct ConfinementModel {
    double alpha_F = 1.0;
    double beta_F = 1.0;
    double a = 0.0;      // Coulomb-term coefficient, enters the omega map
    double mass = 1.0;
    double hbar = 1.0;
};

// alpha_F = sqrt(2 mass c)/hbar, beta_F = mass b/(hbar^2 alpha_F): the
// envelope that cancels the r^2 and r terms of the potential.
ConfinementModel confinement_from_potential(double a, double b, double c,
                                            double mass = 1.0, double hbar = 1.0);

// Relative radial motion of two interacting electrons in a uniform magnetic
// field plus parabolic confinement.
struct QuantumDotModel {
    double eff_mass = 1.0;  // reduced mass
    double omega_conf = 1.0;
    double omega_cyc = 0.0;
    double sigma = 1.0;
    int m_quantum = 0;
    double eps_inf = 1.0;
    double charge = 1.0;
    double hbar = 1.0;

    double gamma_tilde() const; // sqrt(mass * omega_conf / hbar); requires > 0
};

// Eigenvalue ladders (exact affine formulas).
double oscillator_eigenvalue(const OscillatorModel& m, int i, int beta);
double confinement_energy(const ConfinementModel& m, int i, int beta, int l);
double qdot_energy(const QuantumDotModel& m, int i, int beta);

// Unnormalised wave functions at radius r > 0.  The transfer series is
// evaluated on the constant ladder beta_k = beta (the eigenvalue condition
// fixes only one (i, beta) pair; see ladder_from_omega for the consistency
// report).  trunc.n_max controls the retained transfer orders.
double wavefunction_eval(const OscillatorModel& m, int i, int beta, double r,
                         const TrfTruncation& trunc);
double wavefunction_eval(const ConfinementModel& m, int i, int beta, int l, double r,
                         const TrfTruncation& trunc);
std::complex<double> wavefunction_eval(const QuantumDotModel& m, int i, int beta,
                                       double r, std::optional<double> phi,
                                       const TrfTruncation& trunc);

enum class radial_measure { line, polar };

// N with integral_0^r_max |psi|^2 dr = 1 (line) or |psi|^2 r dr = 1 (polar);
// Gauss-Legendre with `nodes` points.  Throws when |psi(r_max)| has not
// decayed below 1e-12 of the sampled peak.
double normalization_constant(const std::function<double(double)>& psi,
                              radial_measure measure, double r_max, int nodes);

double normalize(const OscillatorModel& m, int i, int beta, double r_max, int nodes,
                 const TrfTruncation& trunc);
double normalize(const ConfinementModel& m, int i, int beta, int l, double r_max,
                 int nodes, const TrfTruncation& trunc);
double normalize(const QuantumDotModel& m, int i, int beta, double r_max, int nodes,
                 const TrfTruncation& trunc);

// Large-order envelope of the non-terminating series for |eps| << |mu|:
//   1 + sqrt(-pi mu x^2/2) Erf(sqrt(-mu x^2/2)) exp(-mu x^2/2),
// requires -mu x^2 >= 0.
double asymptotic_form(double mu, double x);

// The coefficient correspondence of the quantum-dot radial equation with the
// GCH form: nu <-> a = 2 sigma |m| + 1, Omega <-> d = eps_param - a, where
// eps_param = (2 E_r - m hbar omega_cyc)/(hbar omega).
struct QdotCorrespondence {
    double a;
    double d;
    double u;
    double eps_param;
    GchParams gch; // mu = -2, eps = 0, nu = a, Omega = d
};

QdotCorrespondence qdot_correspondence(const QuantumDotModel& m, int i, int beta);

} // namespace gch

#endif
