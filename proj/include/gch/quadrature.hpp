#ifndef GCH_QUADRATURE_HPP
#define GCH_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace gch {

struct quad_rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule on [-1, 1] with weight (1-x)^a (1+x)^b, a, b > -1.
quad_rule gauss_jacobi(int n, double a, double b);

// Gauss-Jacobi rule on [0, 1] with weight t^a (1-t)^b.
quad_rule gauss_jacobi01(int n, double a, double b);

// Gauss-Legendre rule on [lo, hi].
quad_rule gauss_legendre(int n, double lo, double hi);

// Node counts and contour geometry for the (t, u, v) integral stacks.
// The circle must enclose v = 0 (and the weight poles in the generating
// function reuse) while excluding the essential singularity at v = 1.
struct QuadratureSpec {
    int circle_nodes = 128;
    double circle_radius = 0.5;
    int line_nodes = 32;

    void validate() const;
};

// (1/2 pi i) * contour integral of f over |v| = radius, by the N-point
// trapezoid rule; spectrally convergent for f analytic in an annulus
// around the circle.  Throws if f evaluates non-finite at any node.
std::complex<double> contour_trapezoid(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    int nodes, double radius);

} // namespace gch

#endif
