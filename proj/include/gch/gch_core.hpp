#ifndef GCH_GCH_CORE_HPP
#define GCH_GCH_CORE_HPP

#include <vector>

namespace gch {

// Coefficients of x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y = 0.
struct GchParams {
    double mu = 0.0;
    double eps = 0.0;
    double nu = 0.0;
    double omega_cap = 0.0; // Omega, the coefficient of x y
    double omega_low = 0.0; // omega, the coefficient inside eps*omega*y

    double gamma() const { return 0.5 * (1.0 + nu); }
    double z_of(double x) const { return -0.5 * mu * x * x; }
    double eps_tilde_of(double x) const { return -0.5 * eps * x; }
    // Omega/(2 mu); requires mu != 0
    double a0() const;
};

struct IndicialRoots {
    double first = 0.0; // always 0
    double second;      // 1 - nu
    bool degenerate;         // nu == 1
    bool near_degenerate;    // |1 - nu| < 1e-8
};

IndicialRoots indicial_roots(const GchParams& p);

// x^lambda; domain error for x <= 0 with non-integer lambda.
double pow_indicial(double x, double lambda);

// Frobenius coefficients c_0..c_N about x = 0 for exponent lambda, c_0 = 1.
struct SeriesCoeffs {
    double lambda = 0.0;
    std::vector<double> c;
    GchParams params;
};

// Three-term relation from substituting y = sum c_m x^(m+lambda):
//   c_m (m+lambda)(m+lambda-1+nu) = -eps (m-1+lambda+omega) c_{m-1}
//                                   - (mu (m-2+lambda) + Omega) c_{m-2}.
// Throws resonance_error naming the offending m when a denominator vanishes.
SeriesCoeffs frobenius_coeffs(const GchParams& p, double lambda, int n_max);

struct SeriesValue {
    double value;
    double tail; // |c_N x^(N+lambda)| * geometric guard factor 2
};

SeriesValue eval_series(const SeriesCoeffs& sc, double x);

// y, y', y'' of the truncated series by termwise differentiation.
struct SeriesJet {
    double y, dy, d2y;
};

SeriesJet eval_series_jet(const SeriesCoeffs& sc, double x);

// x y'' + (mu x^2 + eps x + nu) y' + (Omega x + eps omega) y
double ode_residual(const GchParams& p, double y, double dy, double d2y, double x);

// Canonical Biconfluent Heun parameters (alpha, beta, gamma, delta).
struct BchCanonicalParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma_c = 0.0;
    double delta = 0.0;
};

// Canonical BCH -> GCH coefficient map:
//   mu = -2, eps = -beta, nu = 1 + alpha, Omega = gamma - alpha - 2,
//   omega = (delta/beta + 1 + alpha)/2.   Requires beta != 0.
GchParams bch_to_gch(const BchCanonicalParams& b);

} // namespace gch

#endif
