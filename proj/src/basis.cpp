#include "toricray/basis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toricray/errors.hpp"
#include "toricray/parallel.hpp"
#include "toricray/quadrature.hpp"

namespace toricray {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Coordinate-ascent ternary search for the peak of the concave exponent
// phi(x) = <alpha, x> - k f0(x), used only to seed the quadrature window.
std::vector<double> exponent_peak(const std::vector<double>& alpha, double k,
                                  const ToricMetric& m) {
    int n = m.dim;
    std::vector<double> x(n, 0.0);
    auto phi = [&](const std::vector<double>& p) {
        double v = -k * m.f(p);
        for (int i = 0; i < n; ++i) v += alpha[i] * p[i];
        return v;
    };
    for (int round = 0; round < 3; ++round) {
        for (int axis = 0; axis < n; ++axis) {
            double lo = -60.0, hi = 60.0;
            for (int it = 0; it < 120; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                std::vector<double> p1 = x, p2 = x;
                p1[axis] = m1;
                p2[axis] = m2;
                if (phi(p1) < phi(p2)) lo = m1; else hi = m2;
            }
            x[axis] = 0.5 * (lo + hi);
        }
    }
    return x;
}

} // namespace

double weighted_x_integral(const std::vector<double>& alpha, double k,
                           const ToricMetric& m, double quad_tol) {
    auto peak = exponent_peak(alpha, k, m);
    if (m.dim == 1) {
        auto f = [&](double x) {
            std::vector<double> p{x};
            double e = alpha[0] * x - k * m.f(p);
            return std::exp(e) * m.hess_det(p);
        };
        return integrate_decaying(f, peak[0] - 8.0, peak[0] + 8.0, quad_tol).value;
    }
    // dim 2: iterated adaptive quadrature.
    auto outer = [&](double x1) {
        auto inner = [&](double x2) {
            std::vector<double> p{x1, x2};
            double e = alpha[0] * x1 + alpha[1] * x2 - k * m.f(p);
            return std::exp(e) * m.hess_det(p);
        };
        return integrate_decaying(inner, peak[1] - 8.0, peak[1] + 8.0,
                                  quad_tol * 0.1)
            .value;
    };
    return integrate_decaying(outer, peak[0] - 8.0, peak[0] + 8.0, quad_tol).value;
}

double angular_factor(const std::vector<long>& delta, const ToricMetric& m) {
    double prod = 1.0;
    for (size_t axis = 0; axis < delta.size(); ++axis) {
        long d = delta[axis];
        long deg = std::labs(d) + 2;
        long npts = 2 * deg + 3;
        double s = 0.0;
        for (long j = 0; j < npts; ++j) {
            double th = 2.0 * M_PI * j / npts;
            double w = (axis == 0) ? 1.0 + m.angular_twist * std::cos(th) : 1.0;
            s += w * std::cos(d * th);
        }
        prod *= s / npts;
    }
    return prod;
}

double volume_calibration(const ToricMetric& m, double quad_tol) {
    std::vector<double> zero(m.dim, 0.0);
    double raw = weighted_x_integral(zero, 0.0, m, quad_tol);
    if (!(raw > 0.0))
        throw NumericalError("volume integral is not positive; metric is not a "
                             "Kaehler potential on the sampled range");
    return (m.total_volume / factorial(m.dim)) / raw;
}

double section_norm_squared(const std::vector<long>& alpha, int k,
                            const ToricMetric& m, double quad_tol) {
    std::vector<double> a(alpha.begin(), alpha.end());
    double cal = volume_calibration(m, quad_tol);
    double val = cal * weighted_x_integral(a, k, m, quad_tol);
    if (!(val > 0.0))
        throw NumericalError("section norm quadrature returned a non-positive value");
    return val;
}

double OrthonormalBasis::log_section_sq(std::size_t a, const std::vector<double>& x,
                                        const ToricMetric& m) const {
    double e = -double(k) * m.f(x);
    const auto& al = idx.points[a];
    for (int i = 0; i < m.dim; ++i) e += al[i] * x[i];
    return e - std::log(r2[a]);
}

OrthonormalBasis build_basis(const Polytope& P, int k, const ToricMetric& m,
                             double quad_tol, double gram_tol, int threads) {
    if (P.dim != m.dim) throw ConfigError("polytope/metric dimension mismatch");
    OrthonormalBasis b;
    b.k = k;
    b.idx = lattice_points(P, k);
    b.V = m.total_volume;
    b.cal = volume_calibration(m, quad_tol);

    std::size_t N = b.idx.size();
    b.r2.assign(N, 0.0);
    parallel_for(N, threads, [&](std::size_t i) {
        std::vector<double> a(b.idx.points[i].begin(), b.idx.points[i].end());
        b.r2[i] = b.cal * weighted_x_integral(a, double(k), m, quad_tol);
    });
    b.r.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (!(b.r2[i] > 0.0))
            throw NumericalError("non-positive section norm from quadrature");
        b.r[i] = std::sqrt(b.r2[i]);
    }

    // Gram residual over pairs: exact angular quadrature times the radial
    // pairing integral. All pairs up to 40 sections, a seeded sample beyond.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (N <= 40) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) pairs.push_back({i, j});
    } else {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (uint64_t)k);
        std::uniform_int_distribution<std::size_t> pick(0, N - 1);
        for (int t = 0; t < 200; ++t) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i != j) pairs.push_back({std::min(i, j), std::max(i, j)});
        }
    }
    double worst = 0.0;
    for (auto [i, j] : pairs) {
        std::vector<long> delta(m.dim);
        std::vector<double> mid(m.dim);
        for (int c = 0; c < m.dim; ++c) {
            delta[c] = b.idx.points[i][c] - b.idx.points[j][c];
            mid[c] = 0.5 * (b.idx.points[i][c] + b.idx.points[j][c]);
        }
        double ang = angular_factor(delta, m);
        if (ang == 0.0) continue;
        double radial = b.cal * weighted_x_integral(mid, double(k), m, quad_tol);
        worst = std::max(worst, std::abs(ang * radial / (b.r[i] * b.r[j])));
    }
    b.gram_residual = worst;
    if (worst > gram_tol)
        throw InvariantViolation(
            "gram residual " + std::to_string(worst) +
            " above tolerance: the metric is not torus-invariant");

    // M from the level-1 sections: maximize the concave log of
    // |s_beta^{(1)}|^2_{h0} per beta and take the overall sup.
    LatticeIndex idx1 = lattice_points(P, 1);
    double M2 = 0.0;
    for (const auto& beta : idx1.points) {
        std::vector<double> bd(beta.begin(), beta.end());
        auto peak = exponent_peak(bd, 1.0, m);
        double e = -m.f(peak);
        for (int c = 0; c < m.dim; ++c) e += bd[c] * peak[c];
        double r2b;
        if (k == 1) {
            r2b = b.r2[b.idx.find(beta)];
        } else {
            r2b = b.cal * weighted_x_integral(bd, 1.0, m, quad_tol);
        }
        M2 = std::max(M2, std::exp(e) / r2b);
    }
    b.M = std::sqrt(M2);
    return b;
}

double bergman_sum(const OrthonormalBasis& basis, const ToricMetric& m,
                   const std::vector<double>& x) {
    double mx = -1e300;
    std::vector<double> logs(basis.idx.size());
    for (std::size_t a = 0; a < basis.idx.size(); ++a) {
        logs[a] = basis.log_section_sq(a, x, m);
        mx = std::max(mx, logs[a]);
    }
    double s = 0.0;
    for (double l : logs) s += std::exp(l - mx);
    return std::exp(mx) * s;
}

} // namespace toricray
