#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toricray/bergman.hpp"
#include "toricray/config.hpp"

using namespace toricray;

namespace {

Polytope cp1() { return segment_polytope(Rational(0), Rational(1)); }
ToricMetric fs() { return fubini_study_metric(1); }

WeightSystem linear_ws() {
    return generator_weights({parse_affine("1 - x1", 1)}, Combinator::Max);
}

// log((e^{2t} + e^x)/(1 + e^x)), overflow-safe: the closed-form ray of the
// linear configuration, up to the (1/k) log((k+1)/k) Bergman offset.
double closed_ray(double x, double t) {
    double m1 = std::max(2.0 * t, x);
    double m2 = std::max(0.0, x);
    return (m1 + std::log(std::exp(2 * t - m1) + std::exp(x - m1))) -
           (m2 + std::log(std::exp(-m2) + std::exp(x - m2)));
}

GridSpec small_grid(int n = 96) {
    GridSpec g;
    g.x_min = -20;
    g.x_max = 20;
    g.nx = n;
    g.T = 8;
    g.nt = n;
    return g;
}

struct LevelSetup {
    OrthonormalBasis basis;
    LevelWeights lw;
};

LevelSetup setup(const WeightSystem& ws, int k) {
    LevelSetup s{build_basis(cp1(), k, fs()), {}};
    s.lw = level_weights(ws, s.basis.idx);
    return s;
}

} // namespace

TEST_CASE("trivial weights: phi_k is the constant (1/k) log((k+1)/k)") {
    auto s = setup(trivial_weights(), 10);
    GridFunction phi = phi_k(s.basis, s.lw, fs(), small_grid());
    double expect = std::log(1.1) / 10.0; // 0.00953102...
    CHECK(expect == doctest::Approx(0.00953102).epsilon(1e-5));
    for (double v : phi.values) CHECK(std::abs(v - expect) < 1e-9);
}

TEST_CASE("linear weights: phi_k equals the closed-form ray nodewise") {
    for (int k : {1, 2, 8}) {
        auto s = setup(linear_ws(), k);
        GridFunction phi = phi_k(s.basis, s.lw, fs(), small_grid());
        double off = std::log(double(k + 1) / k) / k;
        double worst = 0;
        for (int ix = 0; ix < phi.spec.nx; ++ix)
            for (int it = 0; it < phi.spec.nt; ++it)
                worst = std::max(worst,
                                 std::abs(phi.at(ix, it) -
                                          (closed_ray(phi.spec.x(ix), phi.spec.t(it)) + off)));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("the t = 0 slice is the Bergman-function potential") {
    for (int k : {4, 16}) {
        auto s = setup(linear_ws(), k);
        GridFunction phi = phi_k(s.basis, s.lw, fs(), small_grid());
        double expect = std::log(double(k + 1) / k) / k;
        for (int ix = 0; ix < phi.spec.nx; ++ix)
            CHECK(std::abs(phi.at(ix, phi.spec.nt - 1) - expect) < 1e-9);
    }
}

TEST_CASE("traceless-weight identity") {
    GridSpec g = small_grid(64);
    SUBCASE("trivial weights: residual is exactly zero") {
        auto s = setup(trivial_weights(), 5);
        GridFunction phi = phi_k(s.basis, s.lw, fs(), g);
        CHECK(phi_sharp_residual(phi, s.basis, s.lw, fs()) == 0.0);
    }
    SUBCASE("linear weights, k = 4: the drift is exactly 1/2") {
        auto s = setup(linear_ws(), 4);
        CHECK(s.lw.ratio == Rational(1, 2));
        GridFunction phi = phi_k(s.basis, s.lw, fs(), g);
        CHECK(phi_sharp_residual(phi, s.basis, s.lw, fs()) < 1e-12);
    }
    SUBCASE("holds at level 1 for every shipped system") {
        for (const WeightSystem& ws :
             {trivial_weights(), linear_ws(),
              generator_weights({parse_affine("0", 1), parse_affine("1/2 - x1", 1)},
                                Combinator::Max)}) {
            auto s = setup(ws, 1);
            GridFunction phi = phi_k(s.basis, s.lw, fs(), g);
            CHECK(phi_sharp_residual(phi, s.basis, s.lw, fs()) < 1e-12);
        }
    }
}

TEST_CASE("psi_k differences") {
    GridSpec g = small_grid(64);
    auto s1 = setup(linear_ws(), 1);
    GridFunction phi1 = phi_k(s1.basis, s1.lw, fs(), g);

    SUBCASE("psi_1 vanishes identically") {
        GridFunction p = psi_k(phi1, phi1);
        for (double v : p.values) CHECK(v == 0.0);
    }
    SUBCASE("linear config: psi_k is the constant (1/k)log((k+1)/k) - log 2") {
        auto s8 = setup(linear_ws(), 8);
        GridFunction psi = psi_k(phi_k(s8.basis, s8.lw, fs(), g), phi1);
        double expect = std::log(9.0 / 8.0) / 8.0 - std::log(2.0);
        for (double v : psi.values) CHECK(std::abs(v - expect) < 1e-9);
    }
    SUBCASE("trivial config: constant as well") {
        auto t1 = setup(trivial_weights(), 1);
        auto t6 = setup(trivial_weights(), 6);
        GridFunction q1 = phi_k(t1.basis, t1.lw, fs(), g);
        GridFunction psi = psi_k(phi_k(t6.basis, t6.lw, fs(), g), q1);
        double expect = std::log(7.0) / 6.0 - std::log(6.0) / 6.0 - std::log(2.0);
        for (double v : psi.values) CHECK(std::abs(v - expect) < 1e-9);
    }
    SUBCASE("grid mismatch is a configuration error") {
        auto s8 = setup(linear_ws(), 8);
        GridFunction other = phi_k(s8.basis, s8.lw, fs(), small_grid(48));
        CHECK_THROWS_AS(psi_k(other, phi1), ConfigError);
    }
}

TEST_CASE("envelope of the ladder") {
    GridSpec g = small_grid(64);
    SUBCASE("trivial config: the cutoff level wins everywhere") {
        std::vector<GridFunction> phis;
        std::vector<int> levels{8, 16, 32};
        for (int k : levels) {
            auto s = setup(trivial_weights(), k);
            phis.push_back(phi_k(s.basis, s.lw, fs(), g));
        }
        EnvelopeResult env = envelope(phis, levels, 8);
        double expect = std::log(9.0 / 8.0) / 8.0;
        for (double v : env.envelope.values) CHECK(std::abs(v - expect) < 1e-9);
        CHECK(env.usc_filter_effect < 1e-12); // constant input
    }
    SUBCASE("linear config: cutoff-shifted closed form") {
        std::vector<GridFunction> phis;
        std::vector<int> levels{8, 16, 32};
        for (int k : levels) {
            auto s = setup(linear_ws(), k);
            phis.push_back(phi_k(s.basis, s.lw, fs(), g));
        }
        EnvelopeResult env = envelope(phis, levels, 8);
        double off = std::log(9.0 / 8.0) / 8.0;
        double worst = 0;
        for (int ix = 0; ix < g.nx; ++ix)
            for (int it = 0; it < g.nt; ++it)
                worst = std::max(worst, std::abs(env.envelope.at(ix, it) -
                                                 (closed_ray(g.x(ix), g.t(it)) + off)));
        CHECK(worst < 1e-9);
        for (std::size_t li = 0; li < levels.size(); ++li)
            CHECK(sup_distance(env.envelope, phis[li]) >= 0); // envelope >= each
    }
    SUBCASE("monotone shifts: envelope is the largest shift") {
        GridFunction f(g);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int it = 0; it < g.nt; ++it)
                f.at(ix, it) = 0.3 * g.x(ix) - 0.1 * g.t(it);
        std::vector<double> shifts{0.5, 0.25, 0.125};
        std::vector<GridFunction> phis;
        std::vector<int> levels{8, 16, 32};
        for (double c : shifts) {
            GridFunction p = f;
            for (double& v : p.values) v += c;
            phis.push_back(p);
        }
        EnvelopeResult env = envelope(phis, levels, 8);
        for (std::size_t i = 0; i < env.envelope.values.size(); ++i)
            CHECK(env.envelope.values[i] == f.values[i] + 0.5);
    }
    SUBCASE("needs three levels above the cutoff") {
        std::vector<GridFunction> phis(2, GridFunction(g));
        CHECK_THROWS_AS(envelope(phis, {8, 16}, 8), ConfigError);
    }
}

TEST_CASE("boundary decay values and slope") {
    auto t10 = setup(trivial_weights(), 10);
    GridFunction tri = phi_k(t10.basis, t10.lw, fs(), small_grid(64));
    double expect = std::log(1.1) / 10.0;
    CHECK(std::abs(boundary_decay(tri) - expect) < 1e-9);

    auto l10 = setup(linear_ws(), 10);
    GridFunction lin = phi_k(l10.basis, l10.lw, fs(), small_grid(64));
    CHECK(std::abs(boundary_decay(lin) - expect) < 1e-9);
}

TEST_CASE("uniform bound: the spec constants at k = 8 and the assert") {
    GridSpec g = small_grid(64);
    auto s1 = setup(linear_ws(), 1);
    auto s8 = setup(linear_ws(), 8);
    GridFunction phi1 = phi_k(s1.basis, s1.lw, fs(), g);
    GridFunction psi = psi_k(phi_k(s8.basis, s8.lw, fs(), g), phi1);

    UniformBoundReport rep = uniform_bound_check(
        {psi}, {8}, {s8.basis.idx.size()}, s1.basis.idx.size(), s8.basis.M,
        s8.basis.V, 1);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.violations == 0);
    CHECK(rep.entries[0].psi_min == doctest::Approx(-0.67843).epsilon(1e-4));
    CHECK(rep.entries[0].lower_bound == doctest::Approx(-1.9207).epsilon(1e-3));

    // psi_1 = 0 trivially satisfies its bound
    GridFunction zero = psi_k(phi1, phi1);
    UniformBoundReport rep1 = uniform_bound_check(
        {zero}, {1}, {s1.basis.idx.size()}, s1.basis.idx.size(), s8.basis.M,
        s8.basis.V, 1);
    CHECK(rep1.violations == 0);
}

TEST_CASE("t-derivative bound on the boundary strip") {
    GridSpec g = small_grid(64);
    SUBCASE("linear: derivative in [0,2], bound is exactly 2") {
        auto s = setup(linear_ws(), 6);
        GridFunction phi = phi_k(s.basis, s.lw, fs(), g);
        GridFunction phi1 = phi_k(setup(linear_ws(), 1).basis,
                                  setup(linear_ws(), 1).lw, fs(), g);
        TDerivReport rep = t_derivative_check(phi, psi_k(phi, phi1), s.lw);
        CHECK(rep.bound == doctest::Approx(2.0));
        CHECK(rep.sup_abs_dphi <= 2.0 + 1e-9);
        CHECK(rep.sup_abs_dphi > 1.0); // genuinely active near t = 0
        CHECK(rep.sup_abs_dpsi < 1e-9); // psi_k is constant here
    }
    SUBCASE("trivial: the derivative vanishes identically") {
        auto s = setup(trivial_weights(), 6);
        GridFunction phi = phi_k(s.basis, s.lw, fs(), g);
        TDerivReport rep = t_derivative_check(phi, phi, s.lw);
        CHECK(rep.sup_abs_dphi < 1e-12);
    }
}

TEST_CASE("background positivity in the exact covariance form") {
    GridSpec g = small_grid(64);
    for (const WeightSystem& ws :
         {trivial_weights(), linear_ws(),
          generator_weights({parse_affine("0", 1), parse_affine("1/2 - x1", 1)},
                            Combinator::Max)}) {
        for (int k : {1, 8}) {
            auto s = setup(ws, k);
            CHECK(psh_min_eig_exact(s.basis, s.lw, fs(), g) >= -1e-6);
        }
    }
}

TEST_CASE("full bundle: slope corridor, boundedness, envelope diagnostics") {
    RayOptions opt;
    opt.k_cut = 8;
    RayBundle rb = build_ray_bundle(cp1(), fs(), linear_ws(),
                                    {1, 2, 4, 8, 16, 32}, small_grid(96), opt);
    CHECK(rb.decay_slope > -2.2);
    CHECK(rb.decay_slope < -1.8);
    CHECK(rb.sup_sup_psi < 1.0);
    CHECK(std::isfinite(rb.sup_sup_psi));
    CHECK(rb.env.used_levels == std::vector<int>{8, 16, 32});
    for (const auto& d : rb.diag) {
        CHECK(d.sharp_residual <= 1e-12);
        CHECK(d.psh_min_eig_cov >= -1e-6);
        CHECK(d.t_deriv_sup <= d.t_deriv_bound + 1e-6);
    }
    // the kinked config passes the same battery
    WeightSystem kinked = generator_weights(
        {parse_affine("0", 1), parse_affine("1/2 - x1", 1)}, Combinator::Max);
    RayBundle rk = build_ray_bundle(cp1(), fs(), kinked, {1, 2, 4, 8, 16, 32},
                                    small_grid(96), opt);
    CHECK(std::isfinite(rk.sup_sup_psi));
    for (const auto& d : rk.diag) {
        CHECK(d.sharp_residual <= 1e-12);
        CHECK(d.psh_min_eig_cov >= -1e-6);
    }
}
