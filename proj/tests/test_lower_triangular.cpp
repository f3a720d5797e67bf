#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toricray/config.hpp"
#include "toricray/triangular.hpp"

using namespace toricray;

namespace {

Polytope cp1() { return segment_polytope(Rational(0), Rational(1)); }
ToricMetric fs() { return fubini_study_metric(1); }

WeightSystem linear_ws() {
    return generator_weights({parse_affine("1 - x1", 1)}, Combinator::Max);
}

WeightSystem kinked_ws() {
    return generator_weights({parse_affine("0", 1), parse_affine("1/2 - x1", 1)},
                             Combinator::Max);
}

// Closed form on CP^1/FS for beta = 1: the only coefficient sits at
// alpha = k and equals 2^{k/2} / sqrt(k+1).
double closed_coefficient(int k) {
    return std::pow(2.0, 0.5 * k) / std::sqrt(double(k + 1));
}

} // namespace

TEST_CASE("level-1 expansion is the identity") {
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    for (long beta : {0L, 1L}) {
        TriangularExpansion ex = expand_power({beta}, 1, b1, b1, fs());
        for (std::size_t i = 0; i < ex.a.size(); ++i) {
            double expect = (long)i == beta ? 1.0 : 0.0;
            CHECK(std::abs(ex.a[i] - expect) < 1e-10);
        }
    }
}

TEST_CASE("beta = 1, k = 2: the closed coefficient 2/sqrt(3)") {
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    OrthonormalBasis b2 = build_basis(cp1(), 2, fs());
    TriangularExpansion ex = expand_power({1}, 2, b1, b2, fs());
    long pos = b2.idx.find({2});
    CHECK(std::abs(ex.a[pos] - 2.0 / std::sqrt(3.0)) < 1e-10);
    CHECK(ex.a[pos] == doctest::Approx(1.15470).epsilon(1e-5));
    CHECK(ex.offdiag_max < 1e-10);
}

TEST_CASE("beta = 1, general k: coefficient 2^{k/2}/sqrt(k+1), diagonality, "
          "reconstruction") {
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    for (int k : {2, 3, 5, 8, 12, 16}) {
        OrthonormalBasis bk = build_basis(cp1(), k, fs());
        for (long beta : {0L, 1L}) {
            TriangularExpansion ex = expand_power({beta}, k, b1, bk, fs());
            long pos = bk.idx.find({beta * k});
            double expect = closed_coefficient(k); // same value for both betas
            CHECK(std::abs(ex.a[pos] - expect) < 1e-8);
            CHECK(ex.offdiag_max < 1e-8);
            CHECK(ex.recon_residual < 1e-8);
        }
    }
}

TEST_CASE("support condition in the eta form") {
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    LevelWeights lin1 = level_weights(linear_ws(), b1.idx);

    SUBCASE("linear, beta = 1, k = 4: supported eta is 0 <= 0") {
        OrthonormalBasis b4 = build_basis(cp1(), 4, fs());
        LevelWeights lin4 = level_weights(linear_ws(), b4.idx);
        TriangularExpansion ex = expand_power({1}, 4, b1, b4, fs());
        SupportReport sr = verify_support(ex, b1, lin1, b4, lin4);
        CHECK(sr.ok);
        CHECK(sr.violations.empty());
    }
    SUBCASE("linear, beta = 0, k = 3: equality 3 <= 3") {
        OrthonormalBasis b3 = build_basis(cp1(), 3, fs());
        LevelWeights lin3 = level_weights(linear_ws(), b3.idx);
        TriangularExpansion ex = expand_power({0}, 3, b1, b3, fs());
        SupportReport sr = verify_support(ex, b1, lin1, b3, lin3);
        CHECK(sr.ok);
        CHECK(lin3.eta[b3.idx.find({0})] == 3);
        CHECK(3 * lin1.eta[b1.idx.find({0})] == 3);
    }
    SUBCASE("trivial weights: 0 <= 0 everywhere") {
        LevelWeights t1 = level_weights(trivial_weights(), b1.idx);
        OrthonormalBasis b5 = build_basis(cp1(), 5, fs());
        LevelWeights t5 = level_weights(trivial_weights(), b5.idx);
        TriangularExpansion ex = expand_power({1}, 5, b1, b5, fs());
        CHECK(verify_support(ex, b1, t1, b5, t5).ok);
    }
    SUBCASE("kinked (ceil) passes for every beta and k <= 16") {
        LevelWeights kk1 = level_weights(kinked_ws(), b1.idx);
        for (int k : {2, 3, 8, 16}) {
            OrthonormalBasis bk = build_basis(cp1(), k, fs());
            LevelWeights kkk = level_weights(kinked_ws(), bk.idx);
            for (long beta : {0L, 1L}) {
                TriangularExpansion ex = expand_power({beta}, k, b1, bk, fs());
                CHECK(verify_support(ex, b1, kk1, bk, kkk).ok);
            }
        }
    }
    SUBCASE("a corrupted weight table is caught") {
        // eta_alpha too large at the supported point alpha = k*beta
        std::vector<WeightTableRow> bad1{{1, {0}, 0}, {1, {1}, 0}};
        std::vector<WeightTableRow> bad4;
        for (long a = 0; a <= 4; ++a) bad4.push_back({4, {a}, 0});
        bad4[4].eta = 7; // supported alpha = 4 for beta = 1 gets 7 > 4*0
        WeightSystem bad = table_weights(bad1);
        for (auto& r : bad4) bad.table.push_back(r);
        LevelWeights w1 = level_weights(bad, b1.idx);
        OrthonormalBasis b4 = build_basis(cp1(), 4, fs());
        LevelWeights w4 = level_weights(bad, b4.idx);
        TriangularExpansion ex = expand_power({1}, 4, b1, b4, fs());
        SupportReport sr = verify_support(ex, b1, w1, b4, w4);
        CHECK_FALSE(sr.ok);
        REQUIRE(sr.violations.size() == 1);
        CHECK(sr.violations[0].eta_alpha == 7);
        CHECK(sr.violations[0].k_eta_beta == 0);
    }
}

TEST_CASE("coefficient bound |a| <= V^{1/2} M^k") {
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    SUBCASE("k = 2: margin against 2") {
        OrthonormalBasis b2 = build_basis(cp1(), 2, fs());
        TriangularExpansion ex = expand_power({1}, 2, b1, b2, fs());
        CHECK(ex.bound == doctest::Approx(2.0).epsilon(1e-9));
        CoefBoundReport br = verify_bound(ex);
        CHECK(br.ok);
        CHECK(br.margin == doctest::Approx(2.0 - 2.0 / std::sqrt(3.0)).epsilon(1e-8));
    }
    SUBCASE("k = 10: 2^5/sqrt(11) <= 2^5") {
        OrthonormalBasis b10 = build_basis(cp1(), 10, fs());
        TriangularExpansion ex = expand_power({1}, 10, b1, b10, fs());
        CHECK(ex.max_abs_a == doctest::Approx(9.64729).epsilon(1e-5));
        CHECK(ex.bound == doctest::Approx(32.0).epsilon(1e-8));
        CHECK(verify_bound(ex).ok);
    }
    SUBCASE("k = 1: 1 <= sqrt(2)") {
        TriangularExpansion ex = expand_power({1}, 1, b1, b1, fs());
        CHECK(ex.max_abs_a == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(ex.bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(verify_bound(ex).ok);
    }
}

TEST_CASE("lambda-form range is a diagnostic, not an assertion") {
    // With the kinked system at beta = 0, the eta form holds while the
    // traceless form can fail; the report must carry both without throwing.
    OrthonormalBasis b1 = build_basis(cp1(), 1, fs());
    LevelWeights k1 = level_weights(kinked_ws(), b1.idx);
    OrthonormalBasis b8 = build_basis(cp1(), 8, fs());
    LevelWeights k8 = level_weights(kinked_ws(), b8.idx);
    TriangularExpansion ex = expand_power({0}, 8, b1, b8, fs());
    SupportReport sr = verify_support(ex, b1, k1, b8, k8);
    CHECK(sr.ok); // eta form is the proof-backed one
    // lambda form may or may not hold; only recorded
    CHECK(sr.lambda_form_violations >= 0);
}

TEST_CASE("expansion works over the bump-perturbed invariant metric") {
    ToricMetric m = fs();
    m.bump_amplitude = 0.02;
    m.bump_center = {0.5};
    m.bump_width = 2.0;
    OrthonormalBasis b1 = build_basis(cp1(), 1, m);
    OrthonormalBasis b4 = build_basis(cp1(), 4, m);
    TriangularExpansion ex = expand_power({1}, 4, b1, b4, m);
    CHECK(ex.offdiag_max < 1e-8);
    CHECK(ex.recon_residual < 1e-8);
    CHECK(verify_bound(ex).ok);
}
