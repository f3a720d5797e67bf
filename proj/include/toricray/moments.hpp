#ifndef TORICRAY_MOMENTS_HPP
#define TORICRAY_MOMENTS_HPP

#include <vector>

#include "toricray/grid.hpp"
#include "toricray/metric.hpp"

namespace toricray {

// Moment data of the ray-velocity pushforward measure: for each sampled t,
// integrals of f(d phi/dt) against the calibrated x-slice volume density of
// f0 + phi(.,t). Column layout: mu(1), then the power moments, then the two
// compactly supported bump test functions.
struct MomentTable {
    std::vector<double> t_requested;
    std::vector<double> t_used; // snapped to grid nodes
    std::vector<int> orders;
    std::vector<double> bump_centers;
    double bump_width = 0.0;
    std::vector<std::vector<double>> values; // [t][column]
    std::vector<double> cross_t_variation;   // per column, relative where sensible
    double min_density = 0.0;
};

MomentTable moment_measure(const GridFunction& phi, const ToricMetric& m,
                           const std::vector<double>& t_samples,
                           const std::vector<int>& orders, double kappa,
                           double density_tol = -1e-6);

} // namespace toricray

#endif
