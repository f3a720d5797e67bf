#ifndef TORICRAY_FUTAKI_HPP
#define TORICRAY_FUTAKI_HPP

#include <vector>

#include "toricray/polytope.hpp"
#include "toricray/rational.hpp"
#include "toricray/weights.hpp"

namespace toricray {

// Leading coefficients of Tr B_k / (k (N_k + 1)) as a series in 1/k. F1 is
// the stability obstruction; both are exact rationals.
struct FutakiExpansion {
    Rational F0;
    Rational F1;
    Rational fit_residual; // max deviation of the data from the exact fit
    std::vector<int> k_samples;
    std::vector<Rational> trace_poly; // Tr B_k, coefficients by ascending degree
    std::vector<Rational> dim_poly;   // k (N_k + 1)
};

// Exact polynomial interpolation of Tr B_k and k(N_k+1) over the samples
// followed by formal series division. Requires at least dim+2 samples; a
// nonzero residual (the weights are not polynomial over the sampled levels)
// raises NumericalError with the per-level residuals in the message.
FutakiExpansion futaki(const WeightSystem& ws, const Polytope& P,
                       const std::vector<int>& k_samples);

} // namespace toricray

#endif
