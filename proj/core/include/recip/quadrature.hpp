#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace recip {

using cplx = std::complex<double>;
using RealToComplex = std::function<cplx(double)>;

struct QuadResult {
    cplx value = 0;
    double error = 0.0;  // estimate
    long evals = 0;
    bool converged = true;
};

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// n-point Gauss-Legendre rule, computed once per n and cached.
const GaussRule& gauss_legendre(int n);

// Nodes and weights of an n-point rule on each of the panels [e_i, e_{i+1}].
struct NodeSet {
    std::vector<double> x, w;
    void add_panel(double a, double b, int n);
    void add_uniform(double a, double b, int panels, int n);
    std::size_t size() const { return x.size(); }
};

cplx integrate(const RealToComplex& f, const NodeSet& nodes);
cplx gauss_panels(const RealToComplex& f, double a, double b, int panels, int n);

// Adaptive Gauss-Kronrod (7, 15) by bisection on [a, b].
QuadResult gauss_kronrod(const RealToComplex& f, double a, double b, double abs_tol, double rel_tol,
                         int max_depth = 40);

// Double-exponential rule on [a, b] for integrable endpoint singularities; the integrand
// receives (x, distance to the nearer endpoint) so that it can avoid cancellation there.
QuadResult tanh_sinh(const std::function<cplx(double, double)>& f, double a, double b, double rel_tol,
                     int max_level = 8);

}  // namespace recip
