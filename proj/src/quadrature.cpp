#include "gch/quadrature.hpp"

#include <cmath>
#include <string>

#include "gch/errors.hpp"
#include "gch/scalar_kernels.hpp"

namespace gch {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix (implicit QL with Wilkinson shifts).  d: diagonal, e: off-diagonal
// (e[0..n-2]), z: workspace seeded with e_1 = (1,0,...,0).  On return d holds
// the eigenvalues and z the first components.
void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd + 1e-307) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw convergence_error("gauss rule: QL iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? r : -r));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflow = false;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (underflow && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // insertion sort by node
    for (int i = 1; i < n; ++i) {
        const double dv = d[i], zv = z[i];
        int j = i - 1;
        for (; j >= 0 && d[j] > dv; --j) {
            d[j + 1] = d[j];
            z[j + 1] = z[j];
        }
        d[j + 1] = dv;
        z[j + 1] = zv;
    }
}

} // namespace

quad_rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw domain_error("gauss_jacobi: need at least one node");
    if (a <= -1.0 || b <= -1.0)
        throw domain_error("gauss_jacobi: weight exponents must exceed -1");

    // Recurrence coefficients of the monic Jacobi polynomials.
    std::vector<double> diag(n), off;
    const double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (b * b - a * a) / den;
        double beta_k;
        if (k == 1) {
            beta_k = 4.0 * (a + 1.0) * (b + 1.0) /
                     ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        } else {
            const double t = 2.0 * k + ab;
            beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                     (t * t * (t + 1.0) * (t - 1.0));
        }
        off.push_back(std::sqrt(beta_k));
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                                log_gamma(b + 1.0) - log_gamma(ab + 2.0));

    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tridiagonal_eigen(diag, off, z);

    quad_rule rule;
    rule.nodes = diag;
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * z[i] * z[i];
    return rule;
}

quad_rule gauss_jacobi01(int n, double a, double b) {
    // t = (1 + x)/2 maps weight t^a (1-t)^b to 2^-(a+b+1) (1+x)^a (1-x)^b.
    quad_rule rule = gauss_jacobi(n, b, a);
    const double scale = std::exp(-(a + b + 1.0) * std::log(2.0));
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
        rule.weights[i] *= scale;
    }
    return rule;
}

quad_rule gauss_legendre(int n, double lo, double hi) {
    quad_rule rule = gauss_jacobi(n, 0.0, 0.0);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

void QuadratureSpec::validate() const {
    if (circle_nodes < 8) throw domain_error("QuadratureSpec: circle_nodes must be >= 8");
    if (line_nodes < 8) throw domain_error("QuadratureSpec: line_nodes must be >= 8");
    if (!(circle_radius > 0.0) || !(circle_radius < 1.0))
        throw domain_error("QuadratureSpec: circle_radius must lie in (0, 1)");
}

std::complex<double> contour_trapezoid(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    int nodes, double radius) {
    if (nodes < 8) throw domain_error("contour_trapezoid: need at least 8 nodes");
    if (!(radius > 0.0))
        throw domain_error("contour_trapezoid: radius must be positive");
    std::complex<double> acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * pi * k / nodes;
        const std::complex<double> v = radius * std::complex<double>(std::cos(theta), std::sin(theta));
        const std::complex<double> fv = f(v);
        if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag()))
            throw convergence_error("contour_trapezoid: integrand non-finite on the contour");
        acc += fv * v;
    }
    return acc / static_cast<double>(nodes);
}

} // namespace gch
