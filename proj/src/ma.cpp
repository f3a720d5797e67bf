#include "toricray/ma.hpp"

#include <cmath>

#include "toricray/basis.hpp"
#include "toricray/fd.hpp"
#include "toricray/numerics.hpp"

namespace toricray {

double ma_calibration(const ToricMetric& m, double quad_tol) {
    std::vector<double> zero(m.dim, 0.0);
    double raw = weighted_x_integral(zero, 0.0, m, quad_tol);
    return m.total_volume / raw;
}

MAField ma_measure(const GridFunction& F, double kappa, int order) {
    const GridSpec& g = F.spec;
    MAField field;
    field.spec = g;
    field.margin = fd_radius(order);
    field.kappa = kappa;
    field.cell_mass.assign(g.nodes(), 0.0);
    double cell = g.hx() * g.ht();
    int r = field.margin;
    for (int ix = r; ix < g.nx - r; ++ix) {
        for (int it = r; it < g.nt - r; ++it) {
            double fxx = fd_dxx(F, ix, it, order);
            double ftt = fd_dtt(F, ix, it, order);
            double fxt = fd_dxt(F, ix, it, order);
            double det = fxx * ftt - fxt * fxt;
            if (!std::isfinite(det))
                throw NumericalError("non-finite Hessian determinant in MA measure");
            field.min_det = std::min(field.min_det, det);
            if (det >= 0.0) {
                double mass = kappa * det * cell;
                field.cell_mass[std::size_t(ix) * g.nt + it] = mass;
                field.total += mass;
            } else {
                field.clamp_total += kappa * (-det) * cell;
            }
        }
    }
    return field;
}

double mass_in_window(const MAField& field, double t0, double t1) {
    const GridSpec& g = field.spec;
    double sum = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            double t = g.t(it);
            if (t < t0 || t > t1) continue;
            sum += field.cell_mass[std::size_t(ix) * g.nt + it];
        }
    return sum;
}

MassDecay mass_decay(const std::vector<GridFunction>& full_potentials,
                     const std::vector<int>& levels, double kappa, double t0,
                     double t1, int order) {
    if (full_potentials.size() != levels.size())
        throw ConfigError("mass_decay: levels/potentials mismatch");
    MassDecay md;
    md.levels = levels;
    for (const auto& F : full_potentials) {
        MAField f = ma_measure(F, kappa, order);
        double mass = mass_in_window(f, t0, t1);
        if (mass < -1e-9)
            throw InvariantViolation("negative Monge-Ampere mass " + format17(mass));
        md.masses.push_back(mass);
    }
    // Fit only when the masses carry signal; otherwise this is the
    // degenerate baseline (no t-dependence or an exactly flat ray).
    double peak = 0.0;
    for (double v : md.masses) peak = std::max(peak, v);
    if (peak < 1e-9) {
        md.degenerate = true;
        return md;
    }
    std::vector<double> lx, ly, lc;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (md.masses[i] <= 0.0) continue;
        lx.push_back(std::log(double(levels[i])));
        ly.push_back(std::log(md.masses[i]));
        lc.push_back(std::log(double(levels[i]) * md.masses[i]));
    }
    if (lx.size() >= 2) {
        md.slope = linear_fit(lx, ly).slope;
        double mean = 0.0;
        for (double v : lc) mean += v;
        md.fitted_C = std::exp(mean / lc.size());
        for (std::size_t i = 0; i < levels.size(); ++i)
            md.max_ratio = std::max(md.max_ratio,
                                    md.masses[i] / (md.fitted_C / levels[i]));
    }
    return md;
}

} // namespace toricray
