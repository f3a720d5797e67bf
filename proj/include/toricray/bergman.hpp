#ifndef TORICRAY_BERGMAN_HPP
#define TORICRAY_BERGMAN_HPP

#include <vector>

#include "toricray/basis.hpp"
#include "toricray/grid.hpp"
#include "toricray/weights.hpp"

namespace toricray {

// Weight data of one level, aligned with the basis lattice order.
struct LevelWeights {
    int k = 1;
    std::vector<long> eta;
    std::vector<Rational> lambda;
    Rational ratio; // Tr B_k / (k (N_k+1))
    long max_abs_eta = 0;
};

LevelWeights level_weights(const WeightSystem& ws, const LatticeIndex& idx);

// The k-th Bergman potential on the grid:
//   (1/k) log sum_a exp(2 eta_a t + <a,x> - k f0(x) - log r_a^2) - (n/k) log k
// evaluated with a shifted log-sum-exp; the w-dependence is through t only.
GridFunction phi_k(const OrthonormalBasis& basis, const LevelWeights& lw,
                   const ToricMetric& m, const GridSpec& grid, int threads = 1);

// Max residual of phi_k - phi_k^# - (Tr B_k / (k(N_k+1))) * 2t, where phi_k^#
// is recomputed independently from the traceless weights. An analytic
// identity; anything above tol is an invariant violation.
double phi_sharp_residual(const GridFunction& phik, const OrthonormalBasis& basis,
                          const LevelWeights& lw, const ToricMetric& m,
                          int threads = 1, double tol = 1e-12);

GridFunction psi_k(const GridFunction& phik, const GridFunction& phi1);

struct EnvelopeResult {
    GridFunction envelope; // nodewise sup over the ladder levels >= k_cut
    std::vector<int> used_levels;
    // Sup-norm change a one-pass neighbor max-filter (the discrete stand-in
    // for the usc regularization) would make; shrinks under refinement.
    double usc_filter_effect = 0.0;
    GridFunction filtered; // the filtered copy, for inspection
};

EnvelopeResult envelope(const std::vector<GridFunction>& phis,
                        const std::vector<int>& levels, int k_cut);

// sup over the t = 0 slice of |phi_k|; the boundary decay sequence a_k.
double boundary_decay(const GridFunction& phik);

struct UniformBoundEntry {
    int k;
    double psi_min, psi_max;
    double lower_bound; // proof constant, must lie below psi_min
};

struct UniformBoundReport {
    std::vector<UniformBoundEntry> entries;
    double sup_abs_psi = 0.0; // running sup over k, boundedness monitor
    int violations = 0;
};

// Lower bound per level: -(1/k) log(V (N_k+1)) - 2 log M - (n/k) log k
//                        - log(N_1+1).
// A proven inequality; a violation signals a quadrature or weight bug and
// throws unless collect_only.
UniformBoundReport uniform_bound_check(const std::vector<GridFunction>& psis,
                                       const std::vector<int>& levels,
                                       const std::vector<std::size_t>& dims,
                                       std::size_t dim1, double M, double V,
                                       int xdim, bool collect_only = false);

struct TDerivReport {
    int k;
    double sup_abs_dphi = 0.0; // on the strip t in [-0.5, 0]
    double bound = 0.0;        // (2/k) max|eta|
    double sup_abs_dpsi = 0.0;
};

// Difference quotients of exact values are averages of the derivative, so
// the weighted-average bound holds without an O(h) allowance; tol only
// covers rounding.
TDerivReport t_derivative_check(const GridFunction& phik, const GridFunction& psik,
                                const LevelWeights& lw, double tol = 1e-6);

// Minimum eigenvalue over nodes of the (x,t) Hessian of f0 + phi_k in the
// exact exponential-family form (1/k) Cov_w[(alpha, 2 eta)]; PSD up to
// rounding, so values below -1e-6 indicate a real bug.
double psh_min_eig_exact(const OrthonormalBasis& basis, const LevelWeights& lw,
                         const ToricMetric& m, const GridSpec& grid,
                         int threads = 1);

// Same quantity from second differences of the grid values; reported as a
// diagnostic (carries an O(h^2) floor, unlike the exact form).
double psh_min_eig_fd(const GridFunction& phik, const ToricMetric& m);

// f0(x) + phi as a grid function (the full convex potential).
GridFunction add_background(const GridFunction& phi, const ToricMetric& m);

struct LevelDiagnostics {
    int k = 0;
    std::size_t sections = 0; // N_k + 1
    double a_k = 0.0;
    double psi_min = 0.0, psi_max = 0.0, lemma_lower_bound = 0.0;
    double sharp_residual = 0.0;
    double psh_min_eig_cov = 0.0, psh_min_eig_fd = 0.0;
    double t_deriv_sup = 0.0, t_deriv_bound = 0.0, t_deriv_sup_psi = 0.0;
    double sup_abs_phi = 0.0;
    double value_at_depth = 0.0; // phi_k at (x=0, t=-T), depth monitor
};

struct RayBundle {
    std::vector<int> levels;
    std::vector<GridFunction> phis;
    std::vector<GridFunction> psis;
    EnvelopeResult env;
    std::vector<LevelDiagnostics> diag;
    double decay_slope = 0.0;   // log-log fit of a_k over levels >= 4
    double sup_sup_psi = 0.0;
    double M = 0.0, V = 0.0;
};

struct RayOptions {
    double quad_tol = 1e-12;
    double gram_tol = 1e-10;
    double sharp_tol = 1e-12;
    int k_cut = 8;
    int threads = 1;
};

RayBundle build_ray_bundle(const Polytope& P, const ToricMetric& m,
                           const WeightSystem& ws, const std::vector<int>& levels,
                           const GridSpec& grid, const RayOptions& opt);

} // namespace toricray

#endif
