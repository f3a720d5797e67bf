#include "toricray/moments.hpp"

#include <algorithm>
#include <cmath>

#include "toricray/bergman.hpp"
#include "toricray/numerics.hpp"

namespace toricray {

MomentTable moment_measure(const GridFunction& phi, const ToricMetric& m,
                           const std::vector<double>& t_samples,
                           const std::vector<int>& orders, double kappa,
                           double density_tol) {
    const GridSpec& g = phi.spec;
    GridFunction F = add_background(phi, m);

    MomentTable tab;
    tab.t_requested = t_samples;
    tab.orders = orders;
    tab.min_density = 1e300;

    // Velocity range drives the bump placement: two caps on [lo, hi].
    double vmin = 1e300, vmax = -1e300;
    double ht = g.ht(), hx = g.hx();
    for (int ix = 1; ix + 1 < g.nx; ++ix)
        for (int it = 1; it + 1 < g.nt; ++it) {
            double vd = (phi.at(ix, it + 1) - phi.at(ix, it - 1)) / (2 * ht);
            vmin = std::min(vmin, vd);
            vmax = std::max(vmax, vd);
        }
    if (!(vmax > vmin)) { vmin -= 0.5; vmax += 0.5; }
    tab.bump_centers = {vmin + 0.25 * (vmax - vmin), vmin + 0.75 * (vmax - vmin)};
    tab.bump_width = 0.35 * (vmax - vmin) + 1e-12;

    auto bump = [&](double y, double c) {
        double u = (y - c) / tab.bump_width;
        double b = 1.0 - u * u;
        return b > 0.0 ? b * b * b : 0.0;
    };

    for (double treq : t_samples) {
        int it = (int)std::lround((treq + g.T) / ht);
        it = std::clamp(it, 1, g.nt - 2);
        tab.t_used.push_back(g.t(it));

        std::size_t cols = 1 + orders.size() + tab.bump_centers.size();
        std::vector<double> row(cols, 0.0);
        for (int ix = 1; ix + 1 < g.nx; ++ix) {
            double density = kappa *
                             (F.at(ix + 1, it) - 2 * F.at(ix, it) + F.at(ix - 1, it)) /
                             (hx * hx);
            tab.min_density = std::min(tab.min_density, density);
            if (density < density_tol)
                throw InvariantViolation(
                    "negative x-slice volume density " + format17(density) +
                    ": the potential is not psh on the slice");
            double w = std::max(0.0, density) * hx;
            double vd = (phi.at(ix, it + 1) - phi.at(ix, it - 1)) / (2 * ht);
            row[0] += w;
            for (std::size_t oi = 0; oi < orders.size(); ++oi)
                row[1 + oi] += w * std::pow(vd, orders[oi]);
            for (std::size_t bi = 0; bi < tab.bump_centers.size(); ++bi)
                row[1 + orders.size() + bi] += w * bump(vd, tab.bump_centers[bi]);
        }
        tab.values.push_back(row);
    }

    std::size_t cols = tab.values.empty() ? 0 : tab.values[0].size();
    tab.cross_t_variation.assign(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double lo = 1e300, hi = -1e300, scale = 0.0;
        for (const auto& row : tab.values) {
            lo = std::min(lo, row[c]);
            hi = std::max(hi, row[c]);
            scale = std::max(scale, std::abs(row[c]));
        }
        tab.cross_t_variation[c] = scale > 1e-9 ? (hi - lo) / scale : (hi - lo);
    }
    return tab;
}

} // namespace toricray
