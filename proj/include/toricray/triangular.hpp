#ifndef TORICRAY_TRIANGULAR_HPP
#define TORICRAY_TRIANGULAR_HPP

#include <vector>

#include "toricray/basis.hpp"
#include "toricray/bergman.hpp"

namespace toricray {

// Expansion of (s_beta^{(1)})^k in the level-k orthonormal basis. For a
// torus-invariant metric the pairing is lattice-diagonal (all mass at
// alpha = k*beta); the quadrature is still run everywhere to validate.
struct TriangularExpansion {
    std::vector<long> beta;
    int k = 1;
    std::vector<double> a;     // aligned with the level-k lattice order
    std::vector<char> support; // |a| above the support tolerance
    double bound = 0.0;        // V^{1/2} M^k
    double max_abs_a = 0.0;
    double offdiag_max = 0.0;  // largest |a| off the lattice diagonal
    double recon_residual = 0.0;
    double support_tol = 1e-8;
};

TriangularExpansion expand_power(const std::vector<long>& beta, int k,
                                 const OrthonormalBasis& basis1,
                                 const OrthonormalBasis& basisk,
                                 const ToricMetric& m, double quad_tol = 1e-13,
                                 double support_tol = 1e-8,
                                 double recon_tol = 1e-8);

struct SupportViolation {
    std::vector<long> alpha;
    double a = 0.0;
    long eta_alpha = 0;
    long k_eta_beta = 0;
};

struct SupportReport {
    bool ok = true;
    std::vector<SupportViolation> violations;
    // Secondary diagnostic: the same range check against the traceless
    // weights; reported, never asserted (the two ranges differ by the trace
    // drift, which need not vanish).
    bool lambda_form_ok = true;
    int lambda_form_violations = 0;
};

// eta_alpha^{(k)} <= k eta_beta^{(1)} over every supported coefficient.
SupportReport verify_support(const TriangularExpansion& exp,
                             const OrthonormalBasis& basis1,
                             const LevelWeights& lw1,
                             const OrthonormalBasis& basisk,
                             const LevelWeights& lwk);

struct CoefBoundReport {
    bool ok = true;
    double margin = 0.0; // bound - max|a|
};

CoefBoundReport verify_bound(const TriangularExpansion& exp);

} // namespace toricray

#endif
