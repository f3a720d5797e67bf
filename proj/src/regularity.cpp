#include "toricray/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "toricray/fd.hpp"

namespace toricray {

GradientField gradient(const GridFunction& phi) {
    const GridSpec& g = phi.spec;
    GradientField out;
    out.spec = g;
    out.gx.assign(g.nodes(), 0.0);
    out.gt.assign(g.nodes(), 0.0);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            out.gx[std::size_t(ix) * g.nt + it] = fd_dx_onesided(phi, ix, it);
            out.gt[std::size_t(ix) * g.nt + it] = fd_dt_onesided(phi, ix, it);
        }
    return out;
}

HolderQuotients holder_quotients(const GradientField& grad,
                                 const std::vector<double>& alphas,
                                 const std::vector<double>& separations) {
    const GridSpec& g = grad.spec;
    HolderQuotients hq;
    hq.alphas = alphas;
    double hx = g.hx(), ht = g.ht();
    double min_sep = 2.0 * std::max(hx, ht);

    for (double s : separations) {
        if (s < min_sep * (1.0 - 1e-12)) continue;
        hq.separations.push_back(s);
    }
    hq.Q.assign(alphas.size(), std::vector<double>(hq.separations.size(), 0.0));

    for (std::size_t si = 0; si < hq.separations.size(); ++si) {
        double s = hq.separations[si];
        // Offsets along the axes and both diagonals at physical length ~ s.
        int mx = std::max(1, (int)std::lround(s / hx));
        int mt = std::max(1, (int)std::lround(s / ht));
        int dxp = std::max(1, (int)std::lround(s / (hx * std::sqrt(2.0))));
        int dtp = std::max(1, (int)std::lround(s / (ht * std::sqrt(2.0))));
        const int offs[4][2] = {{mx, 0}, {0, mt}, {dxp, dtp}, {dxp, -dtp}};

        // Deterministic node subsampling keeps pair counts bounded.
        int stride_x = std::max(1, g.nx / 192);
        int stride_t = std::max(1, g.nt / 192);
        double worst_diff[4] = {0, 0, 0, 0};
        double len[4];
        for (int o = 0; o < 4; ++o) {
            double lx = offs[o][0] * hx, lt = offs[o][1] * ht;
            len[o] = std::sqrt(lx * lx + lt * lt);
        }
        for (int ix = 0; ix < g.nx; ix += stride_x)
            for (int it = 0; it < g.nt; it += stride_t)
                for (int o = 0; o < 4; ++o) {
                    int jx = ix + offs[o][0], jt = it + offs[o][1];
                    if (jx < 0 || jx >= g.nx || jt < 0 || jt >= g.nt) continue;
                    double ddx = grad.dx(ix, it) - grad.dx(jx, jt);
                    double ddt = grad.dt(ix, it) - grad.dt(jx, jt);
                    double diff = std::sqrt(ddx * ddx + ddt * ddt);
                    worst_diff[o] = std::max(worst_diff[o], diff);
                }
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            double q = 0.0;
            for (int o = 0; o < 4; ++o)
                q = std::max(q, worst_diff[o] / std::pow(len[o], alphas[ai]));
            hq.Q[ai][si] = q;
        }
    }
    return hq;
}

RegularityReport holder_estimate(const GridFunction& coarse,
                                 const GridFunction& fine,
                                 const std::vector<double>& alphas) {
    RegularityReport rep;
    GradientField gc = gradient(coarse);
    GradientField gf = gradient(fine);

    double h_f = std::max(fine.spec.hx(), fine.spec.ht());
    double extent = std::min(fine.spec.x_max - fine.spec.x_min, fine.spec.T);
    std::vector<double> seps;
    for (double s = 2.0 * h_f; s <= extent / 4.0; s *= 2.0) seps.push_back(s);

    rep.coarse = holder_quotients(gc, alphas, seps);
    rep.fine = holder_quotients(gf, alphas, seps);

    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        HolderVerdict v;
        v.alpha = alphas[ai];
        for (double q : rep.coarse.Q[ai]) v.q_coarse = std::max(v.q_coarse, q);
        for (double q : rep.fine.Q[ai]) v.q_fine = std::max(v.q_fine, q);
        v.ratio = v.q_coarse > 0 ? v.q_fine / v.q_coarse : 1.0;
        v.bounded = v.ratio <= 1.2;
        rep.verdicts.push_back(v);
    }

    const GridSpec& g = fine.spec;
    for (int ix = 1; ix + 1 < g.nx; ++ix)
        for (int it = 1; it + 1 < g.nt; ++it) {
            double sxx = std::abs(fine.at(ix + 1, it) - 2 * fine.at(ix, it) +
                                  fine.at(ix - 1, it));
            double stt = std::abs(fine.at(ix, it + 1) - 2 * fine.at(ix, it) +
                                  fine.at(ix, it - 1));
            rep.second_difference_max = std::max({rep.second_difference_max, sxx, stt});
        }
    return rep;
}

} // namespace toricray
