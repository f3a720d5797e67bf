#include "toricray/bergman.hpp"

#include <algorithm>
#include <cmath>

#include "toricray/numerics.hpp"
#include "toricray/parallel.hpp"

namespace toricray {

LevelWeights level_weights(const WeightSystem& ws, const LatticeIndex& idx) {
    LevelWeights lw;
    lw.k = idx.k;
    lw.eta = weights(ws, idx);
    lw.lambda = traceless_weights(lw.eta);
    lw.ratio = trace_ratio(lw.eta, idx.k);
    lw.max_abs_eta = 0;
    for (long e : lw.eta) lw.max_abs_eta = std::max(lw.max_abs_eta, std::labs(e));
    return lw;
}

namespace {

// Shared evaluation core: weights_2t[a] multiplies 2t in the exponent of
// term a. Integer eta for phi_k, traceless lambda for phi_k^#.
GridFunction phi_eval(const OrthonormalBasis& basis,
                      const std::vector<double>& weights_2t, const ToricMetric& m,
                      const GridSpec& grid, int threads) {
    grid.validate();
    std::size_t N = basis.idx.size();
    if (weights_2t.size() != N)
        throw ConfigError("weights and basis are not aligned to one lattice order");
    double k = double(basis.k);
    double tail = (m.dim / k) * std::log(k);

    GridFunction out(grid, basis.k);
    parallel_for(std::size_t(grid.nx), threads, [&](std::size_t ixs) {
        int ix = int(ixs);
        std::vector<double> xv{grid.x(ix)};
        double f0 = m.f(xv);
        std::vector<double> base(N);
        for (std::size_t a = 0; a < N; ++a)
            base[a] = basis.idx.points[a][0] * xv[0] - k * f0 - std::log(basis.r2[a]);
        for (int it = 0; it < grid.nt; ++it) {
            double t = grid.t(it);
            double mx = -1e300;
            for (std::size_t a = 0; a < N; ++a)
                mx = std::max(mx, base[a] + 2.0 * weights_2t[a] * t);
            double s = 0.0;
            for (std::size_t a = 0; a < N; ++a)
                s += std::exp(base[a] + 2.0 * weights_2t[a] * t - mx);
            out.at(ix, it) = (mx + std::log(s)) / k - tail;
        }
    });
    out.check_finite();
    return out;
}

} // namespace

GridFunction phi_k(const OrthonormalBasis& basis, const LevelWeights& lw,
                   const ToricMetric& m, const GridSpec& grid, int threads) {
    if ((int)lw.k != basis.k) throw ConfigError("weight/basis level mismatch");
    std::vector<double> w(lw.eta.begin(), lw.eta.end());
    return phi_eval(basis, w, m, grid, threads);
}

double phi_sharp_residual(const GridFunction& phik, const OrthonormalBasis& basis,
                          const LevelWeights& lw, const ToricMetric& m,
                          int threads, double tol) {
    std::vector<double> w(lw.lambda.size());
    for (std::size_t a = 0; a < w.size(); ++a) w[a] = to_double(lw.lambda[a]);
    GridFunction sharp = phi_eval(basis, w, m, phik.spec, threads);
    double ratio = to_double(lw.ratio);
    double worst = 0.0;
    for (int ix = 0; ix < phik.spec.nx; ++ix)
        for (int it = 0; it < phik.spec.nt; ++it) {
            double expect = sharp.at(ix, it) + ratio * 2.0 * phik.spec.t(it);
            worst = std::max(worst, std::abs(phik.at(ix, it) - expect));
        }
    if (worst > tol)
        throw InvariantViolation("traceless-weight identity residual " +
                                 format17(worst) + " exceeds " + format17(tol));
    return worst;
}

GridFunction psi_k(const GridFunction& phik, const GridFunction& phi1) {
    if (!(phik.spec == phi1.spec)) throw ConfigError("grid mismatch in psi_k");
    GridFunction out(phik.spec, phik.level);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = phik.values[i] - phi1.values[i];
    return out;
}

EnvelopeResult envelope(const std::vector<GridFunction>& phis,
                        const std::vector<int>& levels, int k_cut) {
    if (phis.size() != levels.size()) throw ConfigError("levels/potentials mismatch");
    std::vector<std::size_t> use;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] >= k_cut) use.push_back(i);
    if (use.size() < 3)
        throw ConfigError("envelope needs at least 3 levels at or above k_cut");

    EnvelopeResult res;
    res.envelope = GridFunction(phis[use[0]].spec, -1);
    for (std::size_t i : use) {
        res.used_levels.push_back(levels[i]);
        if (!(phis[i].spec == res.envelope.spec))
            throw ConfigError("envelope inputs on different grids");
    }
    const GridSpec& g = res.envelope.spec;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            double v = -1e300;
            for (std::size_t i : use) v = std::max(v, phis[i].at(ix, it));
            res.envelope.at(ix, it) = v;
        }

    // sup over a shrinking level family is nonincreasing; assert it.
    GridFunction prev = res.envelope;
    for (std::size_t drop = 1; drop + 2 < use.size() + 1 && drop < use.size(); ++drop) {
        GridFunction cur(g, -1);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int it = 0; it < g.nt; ++it) {
                double v = -1e300;
                for (std::size_t j = drop; j < use.size(); ++j)
                    v = std::max(v, phis[use[j]].at(ix, it));
                cur.at(ix, it) = v;
                if (v > prev.at(ix, it))
                    throw InvariantViolation("envelope is not monotone in the cutoff");
            }
        prev = cur;
    }

    // One-pass neighbor max-filter: the discrete face of the usc
    // regularization. Its effect is reported, not folded into the values;
    // a finite family of continuous functions has a continuous sup, and the
    // magnitude here is the refinement-convergence observable.
    res.filtered = res.envelope;
    double effect = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            double v = res.envelope.at(ix, it);
            double mx = v;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dt = -1; dt <= 1; ++dt) {
                    int jx = ix + dx, jt = it + dt;
                    if (jx < 0 || jx >= g.nx || jt < 0 || jt >= g.nt) continue;
                    mx = std::max(mx, res.envelope.at(jx, jt));
                }
            res.filtered.at(ix, it) = mx;
            effect = std::max(effect, mx - v);
        }
    res.usc_filter_effect = effect;
    return res;
}

double boundary_decay(const GridFunction& phik) {
    const GridSpec& g = phik.spec;
    int it0 = g.nt - 1; // t(nt-1) = 0
    double a = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) a = std::max(a, std::abs(phik.at(ix, it0)));
    return a;
}

UniformBoundReport uniform_bound_check(const std::vector<GridFunction>& psis,
                                       const std::vector<int>& levels,
                                       const std::vector<std::size_t>& dims,
                                       std::size_t dim1, double M, double V,
                                       int xdim, bool collect_only) {
    UniformBoundReport rep;
    for (std::size_t i = 0; i < psis.size(); ++i) {
        int k = levels[i];
        double lb = -std::log(V * double(dims[i])) / k - 2.0 * std::log(M) -
                    double(xdim) / k * std::log(double(k)) - std::log(double(dim1));
        UniformBoundEntry e;
        e.k = k;
        e.lower_bound = lb;
        e.psi_min = *std::min_element(psis[i].values.begin(), psis[i].values.end());
        e.psi_max = *std::max_element(psis[i].values.begin(), psis[i].values.end());
        rep.sup_abs_psi = std::max({rep.sup_abs_psi, std::abs(e.psi_min), std::abs(e.psi_max)});
        if (e.psi_min < lb) {
            ++rep.violations;
            if (!collect_only)
                throw InvariantViolation(
                    "uniform lower bound violated at k=" + std::to_string(k) +
                    ": min psi " + format17(e.psi_min) + " < " + format17(lb) +
                    " (quadrature or weight bug)");
        }
        rep.entries.push_back(e);
    }
    return rep;
}

TDerivReport t_derivative_check(const GridFunction& phik, const GridFunction& psik,
                                const LevelWeights& lw, double tol) {
    const GridSpec& g = phik.spec;
    TDerivReport rep;
    rep.k = lw.k;
    rep.bound = 2.0 * double(lw.max_abs_eta) / double(lw.k);
    int it_lo = std::max(0, g.nt - 1 - (int)std::ceil(0.5 / g.ht()));
    double ht = g.ht();
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int it = it_lo; it < g.nt; ++it) {
            double dphi, dpsi;
            if (it == g.nt - 1) {
                dphi = (phik.at(ix, it) - phik.at(ix, it - 1)) / ht;
                dpsi = (psik.at(ix, it) - psik.at(ix, it - 1)) / ht;
            } else if (it == 0) {
                continue;
            } else {
                dphi = (phik.at(ix, it + 1) - phik.at(ix, it - 1)) / (2.0 * ht);
                dpsi = (psik.at(ix, it + 1) - psik.at(ix, it - 1)) / (2.0 * ht);
            }
            rep.sup_abs_dphi = std::max(rep.sup_abs_dphi, std::abs(dphi));
            rep.sup_abs_dpsi = std::max(rep.sup_abs_dpsi, std::abs(dpsi));
        }
    }
    if (rep.sup_abs_dphi > rep.bound + tol)
        throw InvariantViolation("t-derivative bound violated at k=" +
                                 std::to_string(lw.k) + ": " +
                                 format17(rep.sup_abs_dphi) + " > " +
                                 format17(rep.bound));
    return rep;
}

double psh_min_eig_exact(const OrthonormalBasis& basis, const LevelWeights& lw,
                         const ToricMetric& m, const GridSpec& grid, int threads) {
    std::size_t N = basis.idx.size();
    double k = double(basis.k);
    std::vector<double> worst_per_col(grid.nx, 1e300);
    parallel_for(std::size_t(grid.nx), threads, [&](std::size_t ixs) {
        int ix = int(ixs);
        std::vector<double> xv{grid.x(ix)};
        double f0 = m.f(xv);
        std::vector<double> base(N), e(N);
        for (std::size_t a = 0; a < N; ++a)
            base[a] = basis.idx.points[a][0] * xv[0] - k * f0 - std::log(basis.r2[a]);
        double local = 1e300;
        for (int it = 0; it < grid.nt; ++it) {
            double t = grid.t(it);
            double mx = -1e300;
            for (std::size_t a = 0; a < N; ++a) {
                e[a] = base[a] + 2.0 * lw.eta[a] * t;
                mx = std::max(mx, e[a]);
            }
            double Z = 0.0;
            for (std::size_t a = 0; a < N; ++a) {
                e[a] = std::exp(e[a] - mx);
                Z += e[a];
            }
            double m0 = 0.0, m1 = 0.0;
            for (std::size_t a = 0; a < N; ++a) {
                double w = e[a] / Z;
                m0 += w * basis.idx.points[a][0];
                m1 += w * 2.0 * lw.eta[a];
            }
            double cxx = 0.0, cxt = 0.0, ctt = 0.0;
            for (std::size_t a = 0; a < N; ++a) {
                double w = e[a] / Z;
                double dx = basis.idx.points[a][0] - m0;
                double dt = 2.0 * lw.eta[a] - m1;
                cxx += w * dx * dx;
                cxt += w * dx * dt;
                ctt += w * dt * dt;
            }
            // Smallest eigenvalue of the 2x2 covariance, divided by k.
            double tr = cxx + ctt;
            double disc = std::sqrt(std::max(0.0, (cxx - ctt) * (cxx - ctt) + 4.0 * cxt * cxt));
            local = std::min(local, 0.5 * (tr - disc) / k);
        }
        worst_per_col[ix] = local;
    });
    return *std::min_element(worst_per_col.begin(), worst_per_col.end());
}

double psh_min_eig_fd(const GridFunction& phik, const ToricMetric& m) {
    GridFunction F = add_background(phik, m);
    const GridSpec& g = F.spec;
    double worst = 1e300;
    for (int ix = 1; ix + 1 < g.nx; ++ix)
        for (int it = 1; it + 1 < g.nt; ++it) {
            double fxx = (F.at(ix + 1, it) - 2 * F.at(ix, it) + F.at(ix - 1, it)) /
                         (g.hx() * g.hx());
            double ftt = (F.at(ix, it + 1) - 2 * F.at(ix, it) + F.at(ix, it - 1)) /
                         (g.ht() * g.ht());
            double fxt = (F.at(ix + 1, it + 1) - F.at(ix + 1, it - 1) -
                          F.at(ix - 1, it + 1) + F.at(ix - 1, it - 1)) /
                         (4.0 * g.hx() * g.ht());
            double tr = fxx + ftt;
            double disc = std::sqrt(std::max(0.0, (fxx - ftt) * (fxx - ftt) + 4.0 * fxt * fxt));
            worst = std::min(worst, 0.5 * (tr - disc));
        }
    return worst;
}

GridFunction add_background(const GridFunction& phi, const ToricMetric& m) {
    GridFunction F = phi;
    for (int ix = 0; ix < F.spec.nx; ++ix) {
        double f0 = m.f({F.spec.x(ix)});
        for (int it = 0; it < F.spec.nt; ++it) F.at(ix, it) += f0;
    }
    return F;
}

RayBundle build_ray_bundle(const Polytope& P, const ToricMetric& m,
                           const WeightSystem& ws, const std::vector<int>& levels,
                           const GridSpec& grid, const RayOptions& opt) {
    RayBundle rb;
    rb.levels = levels;
    if (levels.empty()) throw ConfigError("no levels configured");
    if (levels.front() != 1)
        throw ConfigError("levels must start at 1 (phi_1 is the reference)");

    std::vector<std::size_t> dims;
    std::vector<LevelWeights> lws;
    OrthonormalBasis basis1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        OrthonormalBasis basis =
            build_basis(P, levels[i], m, opt.quad_tol, opt.gram_tol, opt.threads);
        if (i == 0) basis1 = basis;
        LevelWeights lw = level_weights(ws, basis.idx);
        GridFunction phi = phi_k(basis, lw, m, grid, opt.threads);

        LevelDiagnostics d;
        d.k = levels[i];
        d.sections = basis.idx.size();
        d.a_k = boundary_decay(phi);
        d.sharp_residual =
            phi_sharp_residual(phi, basis, lw, m, opt.threads, opt.sharp_tol);
        d.psh_min_eig_cov = psh_min_eig_exact(basis, lw, m, grid, opt.threads);
        d.psh_min_eig_fd = psh_min_eig_fd(phi, m);
        d.sup_abs_phi = phi.max_abs();
        d.value_at_depth = phi.at((grid.nx - 1) / 2, 0);

        rb.phis.push_back(std::move(phi));
        dims.push_back(basis.idx.size());
        lws.push_back(std::move(lw));
        rb.diag.push_back(d);
        if (i == 0) { rb.M = basis.M; rb.V = basis.V; }
    }

    for (std::size_t i = 0; i < levels.size(); ++i) {
        GridFunction psi = psi_k(rb.phis[i], rb.phis[0]);
        TDerivReport td = t_derivative_check(rb.phis[i], psi, lws[i]);
        rb.diag[i].t_deriv_sup = td.sup_abs_dphi;
        rb.diag[i].t_deriv_bound = td.bound;
        rb.diag[i].t_deriv_sup_psi = td.sup_abs_dpsi;
        rb.psis.push_back(std::move(psi));
    }

    UniformBoundReport ub = uniform_bound_check(rb.psis, levels, dims,
                                                dims[0], rb.M, rb.V, P.dim);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        rb.diag[i].psi_min = ub.entries[i].psi_min;
        rb.diag[i].psi_max = ub.entries[i].psi_max;
        rb.diag[i].lemma_lower_bound = ub.entries[i].lower_bound;
    }
    rb.sup_sup_psi = ub.sup_abs_psi;

    rb.env = envelope(rb.phis, levels, opt.k_cut);

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] >= 4) {
            lx.push_back(std::log(double(levels[i])));
            ly.push_back(std::log(rb.diag[i].a_k));
        }
    if (lx.size() >= 2) rb.decay_slope = linear_fit(lx, ly).slope;
    return rb;
}

} // namespace toricray
