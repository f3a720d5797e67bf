#ifndef TORICRAY_BASIS_HPP
#define TORICRAY_BASIS_HPP

#include <vector>

#include "toricray/metric.hpp"
#include "toricray/polytope.hpp"

namespace toricray {

// Orthonormal basis data for H^0(X, L^k): the monomial z^alpha divided by its
// L^2 norm r_alpha under h0^k and the volume form omega_0^n / n!.
struct OrthonormalBasis {
    int k = 0;
    LatticeIndex idx;
    std::vector<double> r;  // r_alpha
    std::vector<double> r2; // r_alpha^2
    double gram_residual = 0.0;
    double M = 0.0;   // sup_beta sup_X |s_beta^{(1)}|_{h0}
    double V = 0.0;   // integral of omega_0^n (configured total volume)
    double cal = 0.0; // scale putting the L^2 density at total mass V/n!

    // log |s_alpha^{(k)}(x)|^2_{h0^k} = <alpha,x> - k f0(x) - log r_alpha^2
    double log_section_sq(std::size_t a, const std::vector<double>& x,
                          const ToricMetric& m) const;
};

// Density calibration: returns cal with cal * integral(det D^2 f0 dx) = V/n!.
double volume_calibration(const ToricMetric& m, double quad_tol = 1e-12);

// r_alpha^2 by adaptive quadrature; relative accuracy quad_tol.
double section_norm_squared(const std::vector<long>& alpha, int k,
                            const ToricMetric& m, double quad_tol = 1e-12);

// Full basis; computes all norms, the gram residual over sampled pairs
// (throws InvariantViolation above gram_tol: the metric was not invariant),
// the sup constant M from the level-1 sections, and echoes V.
OrthonormalBasis build_basis(const Polytope& P, int k, const ToricMetric& m,
                             double quad_tol = 1e-12, double gram_tol = 1e-10,
                             int threads = 1);

// sum_alpha |s_alpha^{(k)}(x)|^2_{h0^k}; the density of the Bergman function.
double bergman_sum(const OrthonormalBasis& basis, const ToricMetric& m,
                   const std::vector<double>& x);

// integral over R^n of exp(<alpha,x> - k f0(x)) det D^2 f0(x) dx; alpha may
// be fractional (section pairings land on half-lattice exponents).
double weighted_x_integral(const std::vector<double>& alpha, double k,
                           const ToricMetric& m, double quad_tol);

// Angular pairing factor prod_j (1/2pi) int e^{i d_j theta} w(theta) dtheta,
// evaluated by a trapezoid rule exact at the trigonometric degree involved;
// w is the (diagnostic) angular weight of the metric.
double angular_factor(const std::vector<long>& delta, const ToricMetric& m);

} // namespace toricray

#endif
