#ifndef TORICRAY_METRIC_HPP
#define TORICRAY_METRIC_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "toricray/polytope.hpp"

namespace toricray {

// Torus-invariant background metric on L, written through its convex
// potential f0 in the log coordinates x_i = log|z_i|^2. The built-in
// potential is Fubini-Study, log(1 + sum exp(x_i)), optionally perturbed by
// a small Gaussian bump (still torus-invariant, convexity is checked).
//
// angular_twist deforms the angular measure by (1 + twist*cos(theta_1)).
// It makes the metric non torus-invariant and exists solely to exercise the
// gram-residual diagnostic; the shipped configurations keep it at 0.
struct ToricMetric {
    int dim = 1;
    double total_volume = 1.0; // configured V = integral of omega_0^n
    double bump_amplitude = 0.0;
    std::vector<double> bump_center;
    double bump_width = 1.0;
    double angular_twist = 0.0;
    std::string name = "fubini_study";

    double f(const std::vector<double>& x) const;
    std::vector<double> grad(const std::vector<double>& x) const;
    Eigen::MatrixXd hess(const std::vector<double>& x) const;
    double hess_det(const std::vector<double>& x) const;

    bool invariant() const { return angular_twist == 0.0; }

    // Minimum eigenvalue of D^2 f0 sampled on [-box,box]^n; must stay > 0
    // for an admissible (positively curved) metric.
    double min_hessian_eig(double box, int samples_per_axis) const;

    // Max over +-e_i (and diagonals in dim 2) of |f0(R d)/R - h_P(d)|, the
    // growth-compatibility defect against the support function of P.
    double recession_mismatch(const Polytope& P, double R = 200.0) const;
};

ToricMetric fubini_study_metric(int dim, double V = 1.0);

} // namespace toricray

#endif
