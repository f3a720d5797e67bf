#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toricray/bergman.hpp"
#include "toricray/config.hpp"
#include "toricray/ma.hpp"
#include "toricray/moments.hpp"
#include "toricray/regularity.hpp"

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

GridSpec square(double ext, int n, double T) {
    GridSpec g;
    g.x_min = -ext; g.x_max = ext; g.nx = n; g.T = T; g.nt = n;
    return g;
}

} // namespace

TEST_CASE("gradient: constants and bilinear fields are exact") {
    GridSpec g = square(2.0, 33, 2.0);
    GridFunction c = fill(g, [](double, double) { return 3.25; });
    GradientField gc = gradient(c);
    for (double v : gc.gx) CHECK(v == 0.0);
    for (double v : gc.gt) CHECK(v == 0.0);

    GridFunction xt = fill(g, [](double x, double t) { return x * t; });
    GradientField gxt = gradient(xt);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it) {
            CHECK(gxt.dx(ix, it) == doctest::Approx(g.t(it)).epsilon(1e-12));
            CHECK(gxt.dt(ix, it) == doctest::Approx(g.x(ix)).epsilon(1e-12));
        }
}

TEST_CASE("gradient of the ray at (0,-1) converges at O(h^2)") {
    double expect = 2.0 * std::exp(-2.0) / (std::exp(-2.0) + 1.0); // 0.23840...
    CHECK(expect == doctest::Approx(0.23840).epsilon(1e-4));
    double err_prev = 0;
    for (int pass = 0; pass < 2; ++pass) {
        int n = pass == 0 ? 65 : 129;
        GridSpec g;
        g.x_min = -4; g.x_max = 4; g.nx = n; g.T = 4; g.nt = n; // node at (0,-1)
        GridFunction phi = fill(g, closed_ray);
        GradientField gf = gradient(phi);
        int ix = (g.nx - 1) / 2;
        int it = (int)std::lround((-1.0 + g.T) / g.ht());
        double err = std::abs(gf.dt(ix, it) - expect);
        if (pass == 1) {
            CHECK(err_prev / err > 3.0); // O(h^2): ratio ~ 4
            CHECK(err < 1e-3);
        }
        err_prev = err;
    }
}

TEST_CASE("holder quotients: smooth quadratic is bounded for all alpha") {
    std::vector<double> alphas{0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
    GridFunction coarse = fill(square(2.0, 65, 2.0),
                               [](double x, double t) { return 0.5 * (x * x + t * t); });
    GridFunction fine = fill(square(2.0, 129, 2.0),
                             [](double x, double t) { return 0.5 * (x * x + t * t); });
    RegularityReport rep = holder_estimate(coarse, fine, alphas);
    for (const auto& v : rep.verdicts) CHECK(v.bounded);
}

TEST_CASE("holder quotients: |x|^{3/2} separates alpha = 1/2 from alpha = 0.9") {
    std::vector<double> alphas{0.5, 0.9};
    auto f = [](double x, double) { return std::pow(std::abs(x), 1.5); };
    GridFunction coarse(square(2.0, 65, 2.0));
    GridFunction fine(square(2.0, 129, 2.0));
    for (GridFunction* gf : {&coarse, &fine})
        for (int ix = 0; ix < gf->spec.nx; ++ix)
            for (int it = 0; it < gf->spec.nt; ++it)
                gf->at(ix, it) = f(gf->spec.x(ix), 0.0);
    RegularityReport rep = holder_estimate(coarse, fine, alphas);
    REQUIRE(rep.verdicts.size() == 2);
    CHECK(rep.verdicts[0].bounded);        // alpha = 1/2: genuine regularity
    CHECK_FALSE(rep.verdicts[1].bounded);  // alpha = 0.9: grows ~ s^{-0.4}
    CHECK(rep.verdicts[1].ratio > 1.25);
}

TEST_CASE("holder quotients: Q nondecreasing in alpha at small separations") {
    GridFunction fine = fill(square(2.0, 129, 2.0),
                             [](double x, double t) { return std::cos(x) + 0.3 * t * t; });
    GradientField gf = gradient(fine);
    std::vector<double> alphas{0.25, 0.5, 0.75, 1.0};
    HolderQuotients hq = holder_quotients(gf, alphas, {0.125, 0.25, 0.5});
    for (std::size_t s = 0; s < hq.separations.size(); ++s) {
        if (hq.separations[s] >= 1.0) continue;
        for (std::size_t a = 0; a + 1 < alphas.size(); ++a)
            CHECK(hq.Q[a][s] <= hq.Q[a + 1][s] * (1 + 1e-12));
    }
}

TEST_CASE("closed-form ray envelope: bounded for every alpha up to 1") {
    Polytope P = segment_polytope(Rational(0), Rational(1));
    WeightSystem lin = generator_weights({parse_affine("1 - x1", 1)}, Combinator::Max);
    RayOptions opt;
    opt.k_cut = 8;
    GridSpec gc = square(20.0, 64, 8.0);
    GridSpec gf2 = square(20.0, 128, 8.0);
    RayBundle coarse = build_ray_bundle(P, fs(), lin, {1, 2, 4, 8, 16, 32}, gc, opt);
    RayBundle fine = build_ray_bundle(P, fs(), lin, {1, 2, 4, 8, 16, 32}, gf2, opt);
    std::vector<double> alphas{0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
    RegularityReport rep =
        holder_estimate(coarse.env.envelope, fine.env.envelope, alphas);
    for (const auto& v : rep.verdicts) CHECK(v.bounded);
}

TEST_CASE("moment measure of the closed-form ray") {
    GridSpec g = square(20.0, 257, 8.0); // h_t = 1/32: -0.5, -1, -2 are nodes
    GridFunction phi = fill(g, closed_ray);
    double kappa = ma_calibration(fs());
    MomentTable tab = moment_measure(phi, fs(), {-0.5, -1.0, -2.0}, {1, 2, 3}, kappa);

    REQUIRE(tab.values.size() == 3);
    for (std::size_t ti = 0; ti < 3; ++ti) {
        CHECK(tab.t_used[ti] == doctest::Approx(tab.t_requested[ti]).epsilon(1e-12));
        CHECK(tab.values[ti][0] == doctest::Approx(1.0).epsilon(5e-3));   // mu(1) = V
        CHECK(std::abs(tab.values[ti][1] - 1.0) < 1e-3);                  // mu(x) = 1
        CHECK(std::abs(tab.values[ti][2] - 4.0 / 3.0) < 1e-3);            // mu(x^2) = 4/3
    }
    CHECK(tab.cross_t_variation[1] < 1e-3);
    CHECK(tab.cross_t_variation[2] < 1e-3);
    CHECK(tab.min_density > -1e-6);
    // cross-module consistency: mu(x) = 2 F0 with F0 = 1/2
    CHECK(std::abs(tab.values[1][1] - 2.0 * 0.5) < 1e-3);
}

TEST_CASE("moment measure of the trivial ray: the Dirac mass at zero") {
    GridSpec g = square(20.0, 257, 8.0);
    GridFunction phi(g); // identically zero potential (constant ray)
    double kappa = ma_calibration(fs());
    MomentTable tab = moment_measure(phi, fs(), {-1.0, -2.0}, {1, 2}, kappa);
    for (const auto& row : tab.values) {
        CHECK(row[0] == doctest::Approx(1.0).epsilon(5e-3)); // total mass V
        CHECK(std::abs(row[1]) < 1e-12);
        CHECK(std::abs(row[2]) < 1e-12);
    }
}

TEST_CASE("moment measure flags a non-psh slice") {
    GridSpec g = square(4.0, 65, 4.0);
    GridFunction bad = fill(g, [](double x, double) { return -0.5 * x * x; });
    CHECK_THROWS_AS(
        moment_measure(bad, fs(), {-1.0}, {1}, ma_calibration(fs())),
        InvariantViolation);
}
