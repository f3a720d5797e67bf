#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toricray/comparison.hpp"
#include "toricray/config.hpp"
#include "toricray/convex_envelope.hpp"
#include "toricray/ma.hpp"

using namespace toricray;

namespace {

ToricMetric fs() { return fubini_study_metric(1); }

double closed_ray(double x, double t) {
    double m1 = std::max(2.0 * t, x);
    double m2 = std::max(0.0, x);
    return (m1 + std::log(std::exp(2 * t - m1) + std::exp(x - m1))) -
           (m2 + std::log(std::exp(-m2) + std::exp(x - m2)));
}

GridFunction fill(const GridSpec& g, double (*f)(double, double)) {
    GridFunction out(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) out.at(ix, it) = f(g.x(ix), g.t(it));
    return out;
}

// full potential of the closed-form ray: f0 + ray = log(e^{2t} + e^x)
double ray_full(double x, double t) {
    double m1 = std::max(2.0 * t, x);
    return m1 + std::log(std::exp(2 * t - m1) + std::exp(x - m1));
}

} // namespace

TEST_CASE("quadratic potential: unit determinant everywhere") {
    GridSpec g;
    g.x_min = -4; g.x_max = 4; g.nx = 65; g.T = 8; g.nt = 65;
    GridFunction F = fill(g, [](double x, double t) { return 0.5 * (x * x + t * t); });
    MAField field = ma_measure(F, 1.0, 2);
    // central differences are exact on quadratics: det = 1, mass = cell volume
    double cell = g.hx() * g.ht();
    for (int ix = 1; ix + 1 < g.nx; ++ix)
        for (int it = 1; it + 1 < g.nt; ++it)
            CHECK(field.cell_mass[std::size_t(ix) * g.nt + it] ==
                  doctest::Approx(cell).epsilon(1e-10));
    CHECK(field.clamp_total == 0.0);
}

TEST_CASE("x-only potential: degenerate direction, zero mass") {
    GridSpec g;
    g.x_min = -10; g.x_max = 10; g.nx = 65; g.T = 4; g.nt = 65;
    GridFunction F = fill(g, [](double x, double) { return std::log(1 + std::exp(x)) + x * x * 0.1; });
    MAField field = ma_measure(F, 1.0, 2);
    CHECK(field.total == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(field.min_det) < 1e-12);
}

TEST_CASE("closed-form ray: interior mass at the noise floor") {
    GridSpec g;
    g.x_min = -14; g.x_max = 6; g.nx = 129; g.T = 4; g.nt = 129;
    GridFunction F = fill(g, ray_full);
    double kappa = ma_calibration(fs());
    CHECK(kappa == doctest::Approx(1.0).epsilon(1e-10));
    SUBCASE("6th-order stencils resolve the rank-1 degeneracy") {
        MAField f6 = ma_measure(F, kappa, 6);
        CHECK(mass_in_window(f6, -4.0, 0.0) < 1e-6);
    }
    SUBCASE("2nd-order stencils leave O(h^2) residue, still small") {
        MAField f2 = ma_measure(F, kappa, 2);
        CHECK(mass_in_window(f2, -4.0, 0.0) < 5e-2);
    }
}

TEST_CASE("calibration: the reference product potential carries mass 2cV(T-h)") {
    double kappa = ma_calibration(fs());
    for (int res : {128, 256}) {
        GridSpec g;
        g.x_min = -20; g.x_max = 20; g.nx = res; g.T = 8; g.nt = res;
        GridFunction F(g);
        ToricMetric m = fs();
        for (int ix = 0; ix < g.nx; ++ix) {
            double f0 = m.f({g.x(ix)});
            for (int it = 0; it < g.nt; ++it) {
                double t = g.t(it);
                F.at(ix, it) = f0 + 0.5 * t * t;
            }
        }
        MAField field = ma_measure(F, kappa, 2);
        // interior cells cover t in [-T + h/2, -h/2]
        double analytic = 1.0 * (g.T - g.ht());
        double rel = std::abs(field.total - analytic) / analytic;
        CHECK(rel < (res == 128 ? 0.01 : 0.0025));
    }
}

TEST_CASE("mass_decay: trivial and linear configs are the degenerate baseline") {
    GridSpec g;
    g.x_min = -14; g.x_max = 6; g.nx = 129; g.T = 4; g.nt = 129;
    std::vector<GridFunction> fulls;
    std::vector<int> levels{4, 8, 16};
    for (int k : levels) {
        GridFunction F = fill(g, ray_full);
        double off = std::log(double(k + 1) / k) / k;
        for (double& v : F.values) v += off; // constants do not move the Hessian
        fulls.push_back(F);
    }
    MassDecay md = mass_decay(fulls, levels, 1.0, -4.0, 0.0, 6);
    CHECK(md.degenerate);
    for (double mass : md.masses) CHECK(mass < 1e-6);
}

TEST_CASE("comparison: analytic equality cases") {
    GridSpec g;
    g.x_min = -6; g.x_max = 6; g.nx = 65; g.T = 6; g.nt = 65;
    ToricMetric m = fs();
    GridFunction bg(g);
    for (int ix = 0; ix < g.nx; ++ix) {
        double f0 = m.f({g.x(ix)});
        for (int it = 0; it < g.nt; ++it) bg.at(ix, it) = f0 + 0.5 * g.t(it) * g.t(it);
    }
    GridFunction u = fill(g, [](double x, double t) { return 0.05 * (x * x + t * t); });

    SUBCASE("u = v: S empty, 0 <= 0") {
        ComparisonResult r = comparison_check(u, u, bg, 1.0, 1.0);
        CHECK(r.s_nodes == 0);
        CHECK(r.mass_u == 0.0);
        CHECK(r.mass_v == 0.0);
        CHECK(r.ok);
    }
    SUBCASE("u = v + c: S empty") {
        GridFunction v = u;
        for (double& w : v.values) w -= 0.3;
        ComparisonResult r = comparison_check(u, v, bg, 1.0, 1.0);
        CHECK(r.s_nodes == 0);
        CHECK(r.ok);
    }
    SUBCASE("boundary violation is a precondition error") {
        GridFunction v = u;
        for (double& w : v.values) w += 0.3; // v > u on the boundary too
        CHECK_THROWS_AS(comparison_check(u, v, bg, 1.0, 1.0), ConfigError);
    }
}

TEST_CASE("comparison harness: 100 seeded psh pairs pass") {
    GridSpec g;
    g.x_min = -6; g.x_max = 6; g.nx = 65; g.T = 6; g.nt = 65;
    ComparisonHarnessResult res =
        comparison_harness(fs(), g, 100, 20240611, 1.0, 1.0, "", false);
    CHECK(res.failures == 0);
    CHECK(res.draws.size() == 100);
    CHECK(res.worst_margin > 0.0);
    // determinism: same seed, same draws
    ComparisonHarnessResult res2 =
        comparison_harness(fs(), g, 100, 20240611, 1.0, 1.0, "", false);
    CHECK(res.worst_margin == res2.worst_margin);
    for (std::size_t i = 0; i < res.draws.size(); ++i) {
        CHECK(res.draws[i].mass_u == res2.draws[i].mass_u);
        CHECK(res.draws[i].mass_v == res2.draws[i].mass_v);
    }
}

TEST_CASE("convex envelope and the uniqueness probe") {
    // Characteristic-aligned grid: hx = 4 ht, so the flat direction of the
    // ray is the lattice direction (1,2) in index space.
    GridSpec g;
    g.x_min = -12; g.x_max = 4; g.nx = 129; g.T = 4; g.nt = 129;
    GridFunction F = fill(g, ray_full);
    double h = std::max(g.hx(), g.ht());

    SUBCASE("zero perturbation projects to itself") {
        GridFunction zero(g);
        UniquenessProbe p = uniqueness_probe(F, zero, 1.0, 1e-4);
        CHECK(p.distance < 1e-10);
        CHECK(p.envelope_defect < 1e-10);
    }
    SUBCASE("smooth interior bump is flattened back to the ray") {
        GridFunction pert(g);
        double R = 1.5, delta = 0.1;
        for (int ix = 0; ix < g.nx; ++ix)
            for (int it = 0; it < g.nt; ++it) {
                double rx = g.x(ix) + 4.0, rt = g.t(it) + 2.0;
                pert.at(ix, it) =
                    delta * std::max(0.0, 1.0 - (rx * rx + rt * rt) / (R * R));
            }
        UniquenessProbe p = uniqueness_probe(F, pert, 1.0, 1e-4);
        CHECK(p.distance <= 2.0 * h);
    }
    SUBCASE("a non-psh spike is removed entirely") {
        GridFunction pert(g);
        pert.at(g.nx / 2, g.nt / 2) = 0.2;
        UniquenessProbe p = uniqueness_probe(F, pert, 1.0, 1e-4);
        CHECK(p.distance <= h);
    }
    SUBCASE("a potential with real mass fails the precondition") {
        GridFunction Q = fill(g, [](double x, double t) { return 0.5 * (x * x + t * t); });
        GridFunction zero(g);
        CHECK_THROWS_AS(uniqueness_probe(Q, zero, 1.0, 1e-4), NumericalError);
    }
}
