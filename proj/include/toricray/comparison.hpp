#ifndef TORICRAY_COMPARISON_HPP
#define TORICRAY_COMPARISON_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "toricray/grid.hpp"
#include "toricray/metric.hpp"

namespace toricray {

// One comparison-principle check: u, v are perturbations of a shared convex
// background potential; on S = {u < v} the MA mass of v must not exceed the
// mass of u beyond the O(h) misclassification shell around dS.
struct ComparisonResult {
    double mass_u = 0.0;
    double mass_v = 0.0;
    std::size_t s_nodes = 0;
    double perimeter = 0.0; // h * number of boundary-crossing node pairs
    double tolerance = 0.0; // c_tol * h * perimeter
    bool ok = true;
};

ComparisonResult comparison_check(const GridFunction& u, const GridFunction& v,
                                  const GridFunction& background, double kappa,
                                  double c_tol, double psh_eig_tol = -1e-6);

struct ComparisonDrawLog {
    uint64_t draw = 0;
    double eps = 0.0, radius = 0.0, cx = 0.0, ct = 0.0;
    double mass_u = 0.0, mass_v = 0.0, tolerance = 0.0;
    bool ok = true;
};

struct ComparisonHarnessResult {
    std::vector<ComparisonDrawLog> draws;
    int failures = 0;
    double worst_margin = 1e300; // min over draws of mass_u + tol - mass_v
};

// Seeded randomized pairs over the reference background f0(x) + t^2/2:
// u is a small random convex quadratic, v adds a compact paraboloid cap.
// A failing draw is serialized to dump_dir (when set) and raises
// InvariantViolation unless collect_only.
ComparisonHarnessResult comparison_harness(const ToricMetric& m,
                                           const GridSpec& grid, int n_draws,
                                           uint64_t seed, double kappa,
                                           double c_tol,
                                           const std::string& dump_dir = "",
                                           bool collect_only = false);

} // namespace toricray

#endif
