#ifndef TORICRAY_REGULARITY_HPP
#define TORICRAY_REGULARITY_HPP

#include <cstdint>
#include <vector>

#include "toricray/grid.hpp"

namespace toricray {

struct GradientField {
    GridSpec spec;
    std::vector<double> gx, gt; // grid layout

    double dx(int ix, int it) const { return gx[std::size_t(ix) * spec.nt + it]; }
    double dt(int ix, int it) const { return gt[std::size_t(ix) * spec.nt + it]; }
};

// Central differences, O(h^2); one-sided at the boundary.
GradientField gradient(const GridFunction& phi);

struct HolderQuotients {
    std::vector<double> alphas;
    std::vector<double> separations; // physical, >= 2h on the source grid
    std::vector<std::vector<double>> Q; // [alpha][separation]
};

HolderQuotients holder_quotients(const GradientField& grad,
                                 const std::vector<double>& alphas,
                                 const std::vector<double>& separations);

struct HolderVerdict {
    double alpha = 0.0;
    double q_coarse = 0.0;
    double q_fine = 0.0;
    double ratio = 0.0;
    bool bounded = false; // quotients stabilize under refinement within 20%
};

struct RegularityReport {
    std::vector<HolderVerdict> verdicts;
    HolderQuotients coarse, fine;
    double second_difference_max = 0.0;
};

// Hoelder quotient study across two resolutions of the same function. The
// separation ladder is dyadic from 2 h_fine up to a quarter of the domain;
// each resolution only contributes shells it can resolve, so a genuinely
// unbounded quotient shows up as growth when the finer shells open up.
RegularityReport holder_estimate(const GridFunction& coarse,
                                 const GridFunction& fine,
                                 const std::vector<double>& alphas);

} // namespace toricray

#endif
