#ifndef GCH_INTEGRAL_REP_HPP
#define GCH_INTEGRAL_REP_HPP

#include "gch/gch_core.hpp"
#include "gch/quadrature.hpp"
#include "gch/scalar_kernels.hpp"
#include "gch/trf_series.hpp"

namespace gch {

struct pair_result {
    double lhs;
    double rhs;
};

// Building-block identity of the terminated branch: the weighted finite sum
//   [1/((i_prev + j/2 + lambda/2)(i_prev - 1 + gamma + j/2 + lambda/2))]
//     * sum_{i_j = i_prev}^{beta_j} ratio(i_prev -> i_j) z^{i_j}
// against its (t, u, v) triple quadrature.  Requires i_prev <= beta_j.
pair_result verify_kj(int j, double lambda, double gamma, int beta_j, int i_prev,
                      double z, const QuadratureSpec& spec);

// Infinite-branch analogue with (Omega/(2 mu) + j/2 + lambda/2)-weights.
// The circle contour only makes sense when the v-exponent is an integer:
//   a = Omega/(2 mu) + j/2 + lambda/2 + i_prev
// For a <= 0 the direct kernel has a pole of order 1 - a at the origin; for
// a >= 1 the kernel is rewritten through M(a,b,z) = e^z M(b-a,b,-z) first.
// Non-integer a throws (branch point at v = 0).
pair_result verify_qj(int j, const GchParams& p, double lambda, int i_prev,
                      double z, const QuadratureSpec& spec, int inner_max);

enum class rep_branch { polynomial, infinite };

// Nested integral representation truncated at transfer order n_cap <= 2.
// The order-0 term is the bare kernel (confluent hypergeometric polynomial or
// Kummer M); each additional level contributes one transfer stack with the
// operator (w d/dw + const) applied analytically to everything deeper.
// The terminated branch takes its ladder from `ladder` and integrates a
// genuine (t, u, v) stack per level: the nondecreasing ladder keeps every
// kernel term inside the origin pole, so the circle contour is exact there.
// The infinite branch has no such guarantee (its v-exponents are generically
// non-integer, and even integer ones drop high kernel terms), so its v-stack
// is evaluated through the Kummer kernel term by term with (t, u) quadrature;
// it supports n_cap <= 1.
// Returned with the normalisation of the corresponding closed form:
//   first/polynomial : F_{beta_0}(gamma; z) + ...
//   second/polynomial: z^(1-gamma) { A_{psi_0}(gamma; z) + ... }
//   first/infinite   : [Gamma(gamma - a0)/Gamma(gamma)] { M(a0, gamma, z) + ... }
//   second/infinite  : z^(1-gamma) [Gamma(1 - a0)/Gamma(2 - gamma)]
//                      { M(a0 + 1 - gamma, 2 - gamma, z) + ... }
double integral_rep_eval(poly_kind kind, rep_branch branch, const GchParams& p,
                         const TerminationLadder* ladder, double x, int n_cap,
                         const QuadratureSpec& spec);

} // namespace gch

#endif
