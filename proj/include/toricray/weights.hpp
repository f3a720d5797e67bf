#ifndef TORICRAY_WEIGHTS_HPP
#define TORICRAY_WEIGHTS_HPP

#include <string>
#include <vector>

#include "toricray/polytope.hpp"
#include "toricray/rational.hpp"

namespace toricray {

// One affine piece c0 + <coef, x> of the generator, exact coefficients.
struct AffinePiece {
    Rational c0;
    std::vector<Rational> coef;

    Rational eval(const std::vector<Rational>& p) const {
        Rational v = c0;
        for (std::size_t i = 0; i < coef.size(); ++i) v += coef[i] * p[i];
        return v;
    }
};

enum class Combinator { Max, Min };

// Rounding used when k*g(alpha/k) is not an integer. Ceiling is the default:
// it is the one choice with ceil(k g(b)) <= k ceil(g(b)) at every lattice
// point b, which keeps the support inequality of the power expansion (and the
// uniform lower bound built on it) valid for generators that are not
// integral at the vertices. Floor is available for experiments.
enum class Rounding { Ceil, Floor };

struct WeightTableRow {
    int k;
    std::vector<long> alpha;
    long eta;
};

struct WeightSystem {
    enum class Kind { Trivial, Generator, Table } kind = Kind::Trivial;
    std::vector<AffinePiece> pieces;
    Combinator comb = Combinator::Max;
    Rounding rounding = Rounding::Ceil;
    std::vector<WeightTableRow> table;
    std::string label = "trivial";

    Rational g(const std::vector<Rational>& p) const;
    // Max of |g| over the vertices of P (PL function -> attained there).
    Rational max_abs_g(const Polytope& P) const;
    // Midpoint concavity probe on a refined rational grid over P.
    bool concave_on(const Polytope& P) const;
};

// Integer weights at level k, aligned with the lattice order.
std::vector<long> weights(const WeightSystem& ws, const LatticeIndex& idx);

// Traceless weights lambda_alpha = eta_alpha - mean(eta); sums to 0 exactly.
std::vector<Rational> traceless_weights(const std::vector<long>& eta);

long trace_sum(const std::vector<long>& eta);

// Tr B_k / (k (N_k + 1)), the drift of the full-weight potential relative to
// the traceless one.
Rational trace_ratio(const std::vector<long>& eta, int k);

// eta_{k b}^{(k)} - k eta_b^{(1)} at each level-1 lattice point where g is
// integral; all zeros for a generator-driven system.
std::vector<std::pair<std::vector<long>, long>> product_compatibility_defects(
    const WeightSystem& ws, const Polytope& P, int k);

WeightSystem trivial_weights();
WeightSystem generator_weights(std::vector<AffinePiece> pieces, Combinator comb,
                               Rounding rounding = Rounding::Ceil,
                               std::string label = "generator");
WeightSystem table_weights(std::vector<WeightTableRow> rows, std::string label = "table");

// Reads table CSV rows "k,alpha_1,...,alpha_n,eta".
std::vector<WeightTableRow> load_weight_table(const std::string& path, int dim);

} // namespace toricray

#endif
