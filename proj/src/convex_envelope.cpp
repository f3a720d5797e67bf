#include "toricray/convex_envelope.hpp"

#include <cmath>

#include "toricray/ma.hpp"
#include "toricray/numerics.hpp"

namespace toricray {

GridFunction convex_envelope(const GridFunction& G, double tol, int max_sweeps) {
    const GridSpec& g = G.spec;
    GridFunction u = G;
    static const int dirs[8][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                   {1, 2}, {2, 1}, {1, -2}, {2, -1}};
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double change = 0.0;
        bool forward = (sweep % 2 == 0);
        for (int pass = 0; pass < (int)g.nodes(); ++pass) {
            int node = forward ? pass : (int)g.nodes() - 1 - pass;
            int ix = node / g.nt, it = node % g.nt;
            double cur = u.at(ix, it);
            double best = cur;
            for (const auto& d : dirs) {
                int ax = ix + d[0], at = it + d[1];
                int bx = ix - d[0], bt = it - d[1];
                if (ax < 0 || ax >= g.nx || bx < 0 || bx >= g.nx) continue;
                if (at < 0 || at >= g.nt || bt < 0 || bt >= g.nt) continue;
                best = std::min(best, 0.5 * (u.at(ax, at) + u.at(bx, bt)));
            }
            if (best < cur) {
                u.at(ix, it) = best;
                change = std::max(change, cur - best);
            }
        }
        if (change < tol) break;
    }
    return u;
}

UniquenessProbe uniqueness_probe(const GridFunction& F_full,
                                 const GridFunction& perturbation, double kappa,
                                 double mass_tol) {
    if (!(F_full.spec == perturbation.spec))
        throw ConfigError("uniqueness_probe: grid mismatch");
    UniquenessProbe probe;
    // High-order stencils keep the degenerate ray's discrete mass at the
    // noise floor, so the precondition tests the potential and not the grid.
    MAField base = ma_measure(F_full, kappa, 6);
    probe.base_mass = base.total;
    if (base.total > mass_tol)
        throw NumericalError("uniqueness_probe: the potential does not solve the "
                             "degenerate equation on this grid",
                             base.total, mass_tol);
    probe.envelope_defect = sup_distance(convex_envelope(F_full), F_full);

    GridFunction G = F_full;
    for (std::size_t i = 0; i < G.values.size(); ++i)
        G.values[i] += perturbation.values[i];
    GridFunction projected = convex_envelope(G);
    probe.distance = sup_distance(projected, F_full);
    return probe;
}

} // namespace toricray
