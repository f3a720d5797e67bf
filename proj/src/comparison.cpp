#include "toricray/comparison.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "toricray/fd.hpp"
#include "toricray/numerics.hpp"

namespace toricray {

namespace {

double clamped_det(const GridFunction& F, int ix, int it) {
    double fxx = fd_dxx(F, ix, it, 2);
    double ftt = fd_dtt(F, ix, it, 2);
    double fxt = fd_dxt(F, ix, it, 2);
    return std::max(0.0, fxx * ftt - fxt * fxt);
}

double min_eig_fd(const GridFunction& F, int ix, int it) {
    double fxx = fd_dxx(F, ix, it, 2);
    double ftt = fd_dtt(F, ix, it, 2);
    double fxt = fd_dxt(F, ix, it, 2);
    double tr = fxx + ftt;
    double disc = std::sqrt(std::max(0.0, (fxx - ftt) * (fxx - ftt) + 4 * fxt * fxt));
    return 0.5 * (tr - disc);
}

GridFunction sum3(const GridFunction& a, const GridFunction& b) {
    GridFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

} // namespace

ComparisonResult comparison_check(const GridFunction& u, const GridFunction& v,
                                  const GridFunction& background, double kappa,
                                  double c_tol, double psh_eig_tol) {
    const GridSpec& g = u.spec;
    if (!(v.spec == g) || !(background.spec == g))
        throw ConfigError("comparison_check: grid mismatch");

    GridFunction Fu = sum3(background, u);
    GridFunction Fv = sum3(background, v);

    // Preconditions: both candidates background-psh, u >= v on the boundary.
    for (int ix = 1; ix + 1 < g.nx; ++ix)
        for (int it = 1; it + 1 < g.nt; ++it) {
            if (min_eig_fd(Fu, ix, it) < psh_eig_tol ||
                min_eig_fd(Fv, ix, it) < psh_eig_tol)
                throw ConfigError("comparison_check: candidate is not psh on the grid");
        }
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            bool edge = ix == 0 || it == 0 || ix == g.nx - 1 || it == g.nt - 1;
            if (edge && u.at(ix, it) < v.at(ix, it) - 1e-14)
                throw ConfigError("comparison_check: u >= v fails on the boundary");
        }

    ComparisonResult res;
    std::vector<char> inS(g.nodes(), 0);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it)
            if (u.at(ix, it) < v.at(ix, it)) {
                inS[std::size_t(ix) * g.nt + it] = 1;
                ++res.s_nodes;
            }

    double cell = g.hx() * g.ht();
    double h = std::max(g.hx(), g.ht());
    long crossings = 0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            bool s = inS[std::size_t(ix) * g.nt + it];
            if (ix + 1 < g.nx && s != (bool)inS[std::size_t(ix + 1) * g.nt + it]) ++crossings;
            if (it + 1 < g.nt && s != (bool)inS[std::size_t(ix) * g.nt + it + 1]) ++crossings;
            if (!s) continue;
            if (ix == 0 || it == 0 || ix == g.nx - 1 || it == g.nt - 1) continue;
            res.mass_u += kappa * clamped_det(Fu, ix, it) * cell;
            res.mass_v += kappa * clamped_det(Fv, ix, it) * cell;
        }
    res.perimeter = h * double(crossings);
    res.tolerance = c_tol * h * res.perimeter;
    res.ok = res.mass_v <= res.mass_u + res.tolerance;
    return res;
}

ComparisonHarnessResult comparison_harness(const ToricMetric& m,
                                           const GridSpec& grid, int n_draws,
                                           uint64_t seed, double kappa,
                                           double c_tol, const std::string& dump_dir,
                                           bool collect_only) {
    grid.validate();
    GridFunction background(grid);
    for (int ix = 0; ix < grid.nx; ++ix) {
        double f0 = m.f({grid.x(ix)});
        for (int it = 0; it < grid.nt; ++it) {
            double t = grid.t(it);
            background.at(ix, it) = f0 + 0.5 * t * t;
        }
    }

    ComparisonHarnessResult out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Quadratic floor keeps the bump from flattening the x direction where
    // the background curvature decays.
    for (int d = 0; d < n_draws; ++d) {
        double a11 = 0.08 + 0.22 * unif(rng);
        double a22 = 0.08 + 0.22 * unif(rng);
        double a12 = (unif(rng) - 0.5) * 0.5 * std::sqrt(a11 * a22);
        double b1 = (unif(rng) - 0.5) * 0.1;
        double b2 = (unif(rng) - 0.5) * 0.1;
        double R = 0.5 + 1.5 * unif(rng);
        double eps = (0.2 + 0.6 * unif(rng)) * 0.25 * a11 * R * R;
        double cx = grid.x_min + (0.25 + 0.5 * unif(rng)) * (grid.x_max - grid.x_min);
        double ct = -grid.T * (0.25 + 0.5 * unif(rng));

        GridFunction u(grid), v(grid);
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int it = 0; it < grid.nt; ++it) {
                double x = grid.x(ix), t = grid.t(it);
                double q = 0.5 * (a11 * x * x + 2 * a12 * x * t + a22 * t * t) +
                           b1 * x + b2 * t;
                u.at(ix, it) = q;
                double rx = x - cx, rt = t - ct;
                double bump = 1.0 - (rx * rx + rt * rt) / (R * R);
                v.at(ix, it) = q + eps * std::max(0.0, bump);
            }

        ComparisonResult res = comparison_check(u, v, background, kappa, c_tol);
        ComparisonDrawLog log;
        log.draw = d;
        log.eps = eps;
        log.radius = R;
        log.cx = cx;
        log.ct = ct;
        log.mass_u = res.mass_u;
        log.mass_v = res.mass_v;
        log.tolerance = res.tolerance;
        log.ok = res.ok;
        out.worst_margin =
            std::min(out.worst_margin, res.mass_u + res.tolerance - res.mass_v);
        out.draws.push_back(log);
        if (!res.ok) {
            ++out.failures;
            std::string record;
            if (!dump_dir.empty()) {
                record = dump_dir + "/comparison_failure_" + std::to_string(d) + ".csv";
                std::ofstream f(record);
                f << "# failing comparison draw " << d << " seed " << seed << "\n";
                f << "x,t,u,v\n";
                for (int ix = 0; ix < grid.nx; ++ix)
                    for (int it = 0; it < grid.nt; ++it)
                        f << format17(grid.x(ix)) << ',' << format17(grid.t(it))
                          << ',' << format17(u.at(ix, it)) << ','
                          << format17(v.at(ix, it)) << "\n";
            }
            if (!collect_only)
                throw InvariantViolation("comparison inequality failed on draw " +
                                             std::to_string(d),
                                         record);
        }
    }
    return out;
}

} // namespace toricray
