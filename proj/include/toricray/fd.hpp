#ifndef TORICRAY_FD_HPP
#define TORICRAY_FD_HPP

#include <Eigen/Dense>

#include "toricray/grid.hpp"

namespace toricray {

// Centered finite-difference stencils on the (x, t) grid. order is the
// formal accuracy order (2, 4 or 6); the stencil radius is order/2.
inline int fd_radius(int order) {
    if (order != 2 && order != 4 && order != 6)
        throw ConfigError("stencil order must be 2, 4 or 6");
    return order / 2;
}

double fd_dx(const GridFunction& F, int ix, int it, int order);
double fd_dt(const GridFunction& F, int ix, int it, int order);
double fd_dxx(const GridFunction& F, int ix, int it, int order);
double fd_dtt(const GridFunction& F, int ix, int it, int order);
double fd_dxt(const GridFunction& F, int ix, int it, int order);

Eigen::Matrix2d fd_hessian(const GridFunction& F, int ix, int it, int order);

// One-sided O(h^2) first derivatives for boundary nodes.
double fd_dx_onesided(const GridFunction& F, int ix, int it);
double fd_dt_onesided(const GridFunction& F, int ix, int it);

} // namespace toricray

#endif
