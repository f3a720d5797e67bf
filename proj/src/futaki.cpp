#include "toricray/futaki.hpp"

#include <set>
#include <sstream>

#include "toricray/errors.hpp"

namespace toricray {

namespace {

// Lagrange interpolation through (x_i, y_i), exact; coefficients ascending.
std::vector<Rational> interpolate(const std::vector<Rational>& xs,
                                  const std::vector<Rational>& ys) {
    std::size_t n = xs.size();
    std::vector<Rational> result(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            denom *= xs[i] - xs[j];
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t c = 0; c < basis.size(); ++c) {
                next[c] += basis[c] * (-xs[j]);
                next[c + 1] += basis[c];
            }
            basis = next;
        }
        for (std::size_t c = 0; c < basis.size(); ++c)
            result[c] += ys[i] * basis[c] / denom;
    }
    return result;
}

Rational eval_poly(const std::vector<Rational>& coef, const Rational& x) {
    Rational v(0);
    for (std::size_t i = coef.size(); i-- > 0;) v = v * x + coef[i];
    return v;
}

} // namespace

FutakiExpansion futaki(const WeightSystem& ws, const Polytope& P,
                       const std::vector<int>& k_samples) {
    P.validate();
    int deg = P.dim + 1;
    std::set<int> uniq(k_samples.begin(), k_samples.end());
    if ((int)uniq.size() < deg + 1)
        throw ConfigError("futaki fit needs at least " + std::to_string(deg + 1) +
                          " distinct levels");
    std::vector<int> ks(uniq.begin(), uniq.end());

    std::vector<Rational> xs, tr, dim;
    for (int k : ks) {
        LatticeIndex idx = lattice_points(P, k);
        auto eta = weights(ws, idx);
        xs.push_back(Rational(k));
        tr.push_back(Rational(trace_sum(eta)));
        dim.push_back(Rational(k) * Rational((long)idx.size()));
    }

    std::vector<Rational> fit_x(xs.begin(), xs.begin() + deg + 1);
    std::vector<Rational> fit_tr(tr.begin(), tr.begin() + deg + 1);
    std::vector<Rational> fit_dim(dim.begin(), dim.begin() + deg + 1);
    auto trace_poly = interpolate(fit_x, fit_tr);
    auto dim_poly = interpolate(fit_x, fit_dim);

    Rational residual(0);
    std::ostringstream per_k;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Rational rt = abs(eval_poly(trace_poly, xs[i]) - tr[i]);
        Rational rd = abs(eval_poly(dim_poly, xs[i]) - dim[i]);
        Rational r = std::max(rt, rd);
        residual = std::max(residual, r);
        if (r != 0) per_k << " k=" << ks[i] << ":" << rational_str(r);
    }
    if (residual != 0)
        throw NumericalError("weight traces are not polynomial over the sampled "
                             "levels; residuals:" + per_k.str());

    // Leading coefficients aligned to degree dim+1, then formal division of
    // the two series in u = 1/k.
    auto coeff = [&](const std::vector<Rational>& p, int d) {
        return d < (int)p.size() ? p[d] : Rational(0);
    };
    Rational pd = coeff(trace_poly, deg), pd1 = coeff(trace_poly, deg - 1);
    Rational qd = coeff(dim_poly, deg), qd1 = coeff(dim_poly, deg - 1);
    if (qd == 0)
        throw NumericalError("degenerate dimension polynomial in futaki fit");

    FutakiExpansion out;
    out.F0 = pd / qd;
    out.F1 = (pd1 - out.F0 * qd1) / qd;
    out.fit_residual = residual;
    out.k_samples = ks;
    out.trace_poly = trace_poly;
    out.dim_poly = dim_poly;
    return out;
}

} // namespace toricray
