#include "toricray/triangular.hpp"

#include <cmath>

#include "toricray/errors.hpp"
#include "toricray/numerics.hpp"

namespace toricray {

TriangularExpansion expand_power(const std::vector<long>& beta, int k,
                                 const OrthonormalBasis& basis1,
                                 const OrthonormalBasis& basisk,
                                 const ToricMetric& m, double quad_tol,
                                 double support_tol, double recon_tol) {
    if (basis1.k != 1 || basisk.k != k)
        throw ConfigError("expand_power needs the level-1 and level-k bases");
    long bpos = basis1.idx.find(beta);
    if (bpos < 0) throw ConfigError("beta is not a level-1 lattice point");

    TriangularExpansion ex;
    ex.beta = beta;
    ex.k = k;
    ex.support_tol = support_tol;
    ex.bound = std::sqrt(basis1.V) * std::pow(basis1.M, double(k));

    int n = m.dim;
    std::vector<long> kbeta(n);
    for (int c = 0; c < n; ++c) kbeta[c] = k * beta[c];
    double log_rb_k = k * std::log(basis1.r[bpos]);

    std::size_t N = basisk.idx.size();
    ex.a.assign(N, 0.0);
    ex.support.assign(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& alpha = basisk.idx.points[i];
        std::vector<long> delta(n);
        std::vector<double> mid(n);
        for (int c = 0; c < n; ++c) {
            delta[c] = kbeta[c] - alpha[c];
            mid[c] = 0.5 * (kbeta[c] + alpha[c]);
        }
        double ang = angular_factor(delta, m);
        double radial = basisk.cal * weighted_x_integral(mid, double(k), m, quad_tol);
        double a = ang * radial / (std::exp(log_rb_k) * basisk.r[i]);
        ex.a[i] = a;
        double abs_a = std::abs(a);
        ex.max_abs_a = std::max(ex.max_abs_a, abs_a);
        if (alpha != kbeta) ex.offdiag_max = std::max(ex.offdiag_max, abs_a);
        if (abs_a > support_tol) ex.support[i] = 1;
    }

    // ||(s_beta^{(1)})^k||^2 - sum a^2 is the squared reconstruction error
    // against an orthonormal target basis.
    double norm_sq =
        basisk.cal *
        weighted_x_integral(std::vector<double>(kbeta.begin(), kbeta.end()),
                            double(k), m, quad_tol) /
        std::exp(2.0 * log_rb_k);
    double sum_a2 = 0.0;
    for (double a : ex.a) sum_a2 += a * a;
    ex.recon_residual = std::abs(norm_sq - sum_a2);
    if (ex.recon_residual > recon_tol)
        throw NumericalError("power expansion does not reconstruct the section",
                             ex.recon_residual, recon_tol);
    return ex;
}

SupportReport verify_support(const TriangularExpansion& exp,
                             const OrthonormalBasis& basis1,
                             const LevelWeights& lw1,
                             const OrthonormalBasis& basisk,
                             const LevelWeights& lwk) {
    long bpos = basis1.idx.find(exp.beta);
    if (bpos < 0) throw ConfigError("beta is not a level-1 lattice point");
    long k_eta_beta = long(exp.k) * lw1.eta[bpos];
    Rational k_lambda_beta = Rational(exp.k) * lw1.lambda[bpos];

    SupportReport rep;
    for (std::size_t i = 0; i < exp.a.size(); ++i) {
        if (!exp.support[i]) continue;
        if (lwk.eta[i] > k_eta_beta) {
            rep.ok = false;
            rep.violations.push_back(
                {basisk.idx.points[i], exp.a[i], lwk.eta[i], k_eta_beta});
        }
        if (lwk.lambda[i] > k_lambda_beta) {
            rep.lambda_form_ok = false;
            ++rep.lambda_form_violations;
        }
    }
    return rep;
}

CoefBoundReport verify_bound(const TriangularExpansion& exp) {
    CoefBoundReport rep;
    rep.margin = exp.bound - exp.max_abs_a;
    rep.ok = rep.margin >= 0.0;
    return rep;
}

} // namespace toricray
