#ifndef GCH_SCALAR_KERNELS_HPP
#define GCH_SCALAR_KERNELS_HPP

namespace gch {

// The two confluent hypergeometric polynomial families.  "first" is the
// F family (weight gamma), "second" the A family (weight 2 - gamma).
enum class poly_kind { first, second };

// log |Gamma(x)|
double log_gamma(double x);

// Rising factorial (x)_n = x (x+1) ... (x+n-1).  Direct product for small n
// (exact zeros when x is a nonpositive integer inside the product range),
// log-Gamma differences for long positive-base products.
double pochhammer(double x, int n);

// B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), p > 0, q > 0.
double beta_integral(double p, double q);

// Kummer function of the first kind M(a, b, z), real arguments.
// Transforms M(a,b,z) = e^z M(b-a, b, -z) for strongly negative z.
double kummer_m(double a, double b, double z);

// Degree-d confluent hypergeometric polynomial:
//   first :  F_d(gamma; z) = [Gamma(d+gamma)/Gamma(gamma)] sum_{n<=d} (-d)_n /((gamma)_n n!) z^n
//   second:  A_d(gamma; z) = [Gamma(d+2-gamma)/Gamma(2-gamma)] sum_{n<=d} (-d)_n /((2-gamma)_n n!) z^n
double chp_eval(poly_kind kind, int degree, double gamma, double z);

// Error function, |error| <= 1e-14.  Maclaurin series for small |x|,
// continued-fraction erfc for the tail.
double erf(double x);

} // namespace gch

#endif
