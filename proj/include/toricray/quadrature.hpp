#ifndef TORICRAY_QUADRATURE_HPP
#define TORICRAY_QUADRATURE_HPP

#include <functional>

namespace toricray {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0; // estimated
    int panels = 0;
};

// Adaptive Gauss-Legendre on [a,b]: panels are bisected until the local
// GL15-vs-GL7 discrepancy meets rel_tol against the running integral scale.
// Throws NumericalError (reporting the achieved error) on non-convergence.
QuadResult adaptive_gl(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, int max_panels = 4000);

// Integral of f over the whole line, for integrands that decay at least
// exponentially away from a bounded core. The domain is grown from
// [lo0, hi0] until the endpoint values fall below tail_rel of the running
// peak sample, then handed to adaptive_gl.
QuadResult integrate_decaying(const std::function<double(double)>& f, double lo0,
                              double hi0, double rel_tol, double tail_rel = 1e-16,
                              double max_extent = 400.0);

} // namespace toricray

#endif
