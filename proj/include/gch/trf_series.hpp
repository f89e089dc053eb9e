#ifndef GCH_TRF_SERIES_HPP
#define GCH_TRF_SERIES_HPP

#include <string>
#include <vector>

#include "gch/gch_core.hpp"
#include "gch/scalar_kernels.hpp"

namespace gch {

// Nondecreasing nonnegative caps beta_0 <= beta_1 <= ... bounding the
// nested sums of the terminated transfer series.
struct TerminationLadder {
    std::vector<int> betas;

    void validate() const; // throws domain_error if decreasing or negative
    int size() const { return static_cast<int>(betas.size()); }
};

struct TrfTruncation {
    int n_max = 8;     // outer eps_tilde-power cutoff
    int inner_max = 40; // cap on each index sum in the infinite branch

    void validate() const;
};

struct TrfValue {
    double value;
    double tail;    // a posteriori truncation estimate
    bool converged; // tail <= 1e-10 * |value|
};

// Terminated-series branch: nested finite sums with caps from the ladder,
// transfer prefactors (i + lambda/2 + omega/2 + k/2) / ((i + 1/2 + lambda/2 + k/2)
// (i - 1/2 + gamma + k/2 + lambda/2)) and Pochhammer-ratio weights, the n-th
// block weighted by eps_tilde^n.  Returns x^lambda * (sum through n_max).
// Evaluated as literal nested sums (prefix products memoised per level);
// throws budget_error past 1e8 nested terms.
TrfValue trf_polynomial_eval(const TerminationLadder& ladder, double gamma,
                             double lambda, double omega_low, double x, double z,
                             double eps_tilde, const TrfTruncation& trunc);

// Infinite-series branch: terminating weights replaced by
// (Omega/(2 mu) + k/2 + lambda/2)-Pochhammer ratios, each index sum truncated
// at inner_max.  Returns x^lambda * (sum through n_max) with tail estimate.
TrfValue trf_infinite_eval(const GchParams& p, double lambda, double x,
                           const TrfTruncation& trunc);

// Coefficients of x^(lambda + m), 0 <= m <= m_max, from the bookkeeping
// z = -mu x^2/2, eps_tilde = -eps x/2 (so m = 2 i_n + n); no floating
// evaluation of x.  Truncation caps are honoured, so entries are exact
// finite sums whenever n_max >= m_max.
std::vector<double> trf_coefficients_infinite(const GchParams& p, double lambda,
                                              int m_max, const TrfTruncation& trunc);
std::vector<double> trf_coefficients_polynomial(const TerminationLadder& ladder,
                                                double gamma, double lambda,
                                                double omega_low, double mu,
                                                double eps, int m_max,
                                                const TrfTruncation& trunc);

// Frobenius-normalised wrappers:
//   QW = [Gamma(gamma+beta_0)/Gamma(gamma)] * (lambda = 0 transfer sum)
//   RW = z^(1-gamma) [Gamma(psi_0+2-gamma)/Gamma(2-gamma)] * (sum with
//        gamma -> 2-gamma and omega -> omega + 2 - 2 gamma), i.e. the
//        lambda = 1 - nu branch written in terms of z.
double qw_rw_eval(poly_kind kind, const TerminationLadder& ladder, double gamma,
                  double omega_low, double z, double eps_tilde,
                  const TrfTruncation& trunc);

// QW in the limit where the first-derivative coupling vanishes but the
// eps*omega product stays finite: transfer numerators collapse to 1 and the
// caller supplies the limiting expansion variable directly.
double qw_eval_unit_numerator(const TerminationLadder& ladder, double gamma,
                              double z, double eps_tilde_eff,
                              const TrfTruncation& trunc);

// Termination-ladder consistency against Omega = -mu (2 beta_i + i + lambda):
// reports the raw real-valued solutions beta_i = -Omega/(2 mu) - (i + lambda)/2
// and whether they form a valid (integer, nonnegative, nondecreasing) ladder.
struct LadderCheck {
    bool consistent;
    std::vector<double> raw;
    TerminationLadder ladder; // populated only when consistent
    std::string note;
};

LadderCheck ladder_from_omega(const GchParams& p, double lambda, int levels);

} // namespace gch

#endif
