#ifndef GCH_GENFUNC_HPP
#define GCH_GENFUNC_HPP

#include <vector>

#include "gch/quadrature.hpp"
#include "gch/scalar_kernels.hpp"

namespace gch {

// Finitely supported weight sequence s_0..s_K of the generating-function
// operator.  Partial products to infinity stop at the support boundary
// (weights past the support act as 1 inside products and as absent operators),
// so s_{a,inf} = prod_{l=a}^{K} s_l for a <= K and 0 for a > K.
struct WeightSeq {
    std::vector<double> s;

    int support() const { return static_cast<int>(s.size()) - 1; }
    double tail_product(int a) const;
    void validate() const; // |s_i| < 1
};

// Generating-function kernels:
//   first :  sum_d t^d/d! F_d(gamma; z) = (1-t)^(-gamma)   exp(-z t/(1-t))
//   second:  sum_d t^d/d! A_d(gamma; z) = (1-t)^(gamma-2)  exp(-z t/(1-t))
double genfunc_chp(poly_kind kind, double t, double gamma, double z);

// Left side of the generating-function identity: the weighted beta-lattice
// sum of terminated transfer series through eps_tilde^n_cap, betas capped at
// beta_cap, indices past n_cap closed geometrically.  Throws budget_error
// past 1e7 lattice points.
double genfunc_gch_lhs(poly_kind kind, double gamma, double omega_low,
                       const WeightSeq& ws, double mu, double eps, double x,
                       int beta_cap, int n_cap);

// Right side: the closed form with the geometric beta-sums and the
// beta_0-kernel resummed analytically, the (w* d/dw* + const) operators
// applied analytically, one (t, u) Gauss-Jacobi pair per transfer level and
// one v-circle per level; n_cap <= 2.  The circle must enclose both the
// geometric pole at v = s_{l,inf} and the kernel singularity the resummed
// sum drags along at v-product = s_{0,inf} (keeping only the former, as a
// naive residue collapse would, loses an O(s_{0,inf}) contribution).
double genfunc_gch_rhs(poly_kind kind, double gamma, double omega_low,
                       const WeightSeq& ws, double mu, double eps, double x,
                       int n_cap, const QuadratureSpec& spec);

} // namespace gch

#endif
