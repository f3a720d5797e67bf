#ifndef TORICRAY_CONVEX_ENVELOPE_HPP
#define TORICRAY_CONVEX_ENVELOPE_HPP

#include "toricray/grid.hpp"

namespace toricray {

// Largest grid function below G that is midpoint-convex along the lattice
// directions (1,0),(0,1),(1,1),(1,-1),(1,2),(2,1),(1,-2),(2,-1) in index
// space: the obstacle-problem iteration for the discrete convex envelope.
GridFunction convex_envelope(const GridFunction& G, double tol = 1e-12,
                             int max_sweeps = 50000);

struct UniquenessProbe {
    double base_mass = 0.0;     // interior MA mass of the unperturbed potential
    double distance = 0.0;      // sup |envelope(F + pert) - F|
    double envelope_defect = 0.0; // sup |envelope(F) - F|, algorithmic floor
};

// Perturb-and-project search for a second solution with the same boundary
// data: project the perturbed potential back to the convex cone and measure
// how far it lands from the original. The unperturbed potential must itself
// carry near-zero mass (<= mass_tol) for the probe to make sense.
UniquenessProbe uniqueness_probe(const GridFunction& F_full,
                                 const GridFunction& perturbation, double kappa,
                                 double mass_tol);

} // namespace toricray

#endif
