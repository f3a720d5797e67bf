#ifndef TORICRAY_MA_HPP
#define TORICRAY_MA_HPP

#include <cstdint>
#include <vector>

#include "toricray/grid.hpp"
#include "toricray/metric.hpp"

namespace toricray {

// Discrete Monge-Ampere measure of an invariant potential F(x,t):
// cell mass = kappa * det(D^2 F)_+ * hx * ht at interior nodes. kappa is
// calibrated once on the background metric so the reference product
// potential f0(x) + c t^2 carries total mass 2 c V T.
struct MAField {
    GridSpec spec;
    int margin = 1; // stencil radius; nodes within margin of the edge carry no cell
    std::vector<double> cell_mass; // full grid layout, zero outside interior
    double total = 0.0;
    double clamp_total = 0.0; // mass removed by the positivity clamp
    double min_det = 0.0;     // most negative raw determinant seen
    double kappa = 1.0;
};

// kappa = V / integral(det D^2 f0 dx).
double ma_calibration(const ToricMetric& m, double quad_tol = 1e-12);

MAField ma_measure(const GridFunction& F, double kappa, int order = 2);

// Mass restricted to t in [t0, t1].
double mass_in_window(const MAField& field, double t0, double t1);

// Exact mass of f0(x) + c t^2 over t in [-T, 0] under the calibration above.
inline double reference_mass(double c, double V, double T) { return 2.0 * c * V * T; }

struct MassDecay {
    std::vector<int> levels;
    std::vector<double> masses;
    bool degenerate = false; // all masses at quadrature-noise level
    double slope = 0.0;      // log-log fit
    double fitted_C = 0.0;   // least-squares constant for the C/k envelope
    double max_ratio = 0.0;  // max_k mass_k / (fitted_C / k)
};

// Per-level interior masses of the full potentials over the window, with the
// 1/k-envelope fit. Negative totals beyond -1e-9 raise InvariantViolation.
MassDecay mass_decay(const std::vector<GridFunction>& full_potentials,
                     const std::vector<int>& levels, double kappa, double t0,
                     double t1, int order = 2);

} // namespace toricray

#endif
