#include "toricray/fd.hpp"

namespace toricray {

namespace {

// Central first-derivative coefficients for offsets 1..r (antisymmetric).
const double D1_2[] = {0.5};
const double D1_4[] = {2.0 / 3.0, -1.0 / 12.0};
const double D1_6[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};

// Central second derivative: center coefficient then offsets 1..r.
const double D2_2_C = -2.0;
const double D2_2[] = {1.0};
const double D2_4_C = -5.0 / 2.0;
const double D2_4[] = {4.0 / 3.0, -1.0 / 12.0};
const double D2_6_C = -49.0 / 18.0;
const double D2_6[] = {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};

const double* d1_coef(int order) {
    return order == 2 ? D1_2 : order == 4 ? D1_4 : D1_6;
}
const double* d2_coef(int order, double& center) {
    if (order == 2) { center = D2_2_C; return D2_2; }
    if (order == 4) { center = D2_4_C; return D2_4; }
    center = D2_6_C;
    return D2_6;
}

} // namespace

double fd_dx(const GridFunction& F, int ix, int it, int order) {
    int r = fd_radius(order);
    const double* c = d1_coef(order);
    double s = 0.0;
    for (int m = 1; m <= r; ++m) s += c[m - 1] * (F.at(ix + m, it) - F.at(ix - m, it));
    return s / F.spec.hx();
}

double fd_dt(const GridFunction& F, int ix, int it, int order) {
    int r = fd_radius(order);
    const double* c = d1_coef(order);
    double s = 0.0;
    for (int m = 1; m <= r; ++m) s += c[m - 1] * (F.at(ix, it + m) - F.at(ix, it - m));
    return s / F.spec.ht();
}

double fd_dxx(const GridFunction& F, int ix, int it, int order) {
    int r = fd_radius(order);
    double center;
    const double* c = d2_coef(order, center);
    double s = center * F.at(ix, it);
    for (int m = 1; m <= r; ++m) s += c[m - 1] * (F.at(ix + m, it) + F.at(ix - m, it));
    return s / (F.spec.hx() * F.spec.hx());
}

double fd_dtt(const GridFunction& F, int ix, int it, int order) {
    int r = fd_radius(order);
    double center;
    const double* c = d2_coef(order, center);
    double s = center * F.at(ix, it);
    for (int m = 1; m <= r; ++m) s += c[m - 1] * (F.at(ix, it + m) + F.at(ix, it - m));
    return s / (F.spec.ht() * F.spec.ht());
}

double fd_dxt(const GridFunction& F, int ix, int it, int order) {
    // Composition of the centered first-derivative stencils in x and t.
    int r = fd_radius(order);
    const double* c = d1_coef(order);
    double s = 0.0;
    for (int mx = 1; mx <= r; ++mx) {
        double row = 0.0;
        for (int mt = 1; mt <= r; ++mt) {
            row += c[mt - 1] * (F.at(ix + mx, it + mt) - F.at(ix + mx, it - mt) -
                                F.at(ix - mx, it + mt) + F.at(ix - mx, it - mt));
        }
        s += c[mx - 1] * row;
    }
    return s / (F.spec.hx() * F.spec.ht());
}

Eigen::Matrix2d fd_hessian(const GridFunction& F, int ix, int it, int order) {
    Eigen::Matrix2d H;
    H(0, 0) = fd_dxx(F, ix, it, order);
    H(1, 1) = fd_dtt(F, ix, it, order);
    H(0, 1) = H(1, 0) = fd_dxt(F, ix, it, order);
    return H;
}

double fd_dx_onesided(const GridFunction& F, int ix, int it) {
    int n = F.spec.nx;
    double h = F.spec.hx();
    if (ix == 0)
        return (-3.0 * F.at(0, it) + 4.0 * F.at(1, it) - F.at(2, it)) / (2.0 * h);
    if (ix == n - 1)
        return (3.0 * F.at(n - 1, it) - 4.0 * F.at(n - 2, it) + F.at(n - 3, it)) /
               (2.0 * h);
    return fd_dx(F, ix, it, 2);
}

double fd_dt_onesided(const GridFunction& F, int ix, int it) {
    int n = F.spec.nt;
    double h = F.spec.ht();
    if (it == 0)
        return (-3.0 * F.at(ix, 0) + 4.0 * F.at(ix, 1) - F.at(ix, 2)) / (2.0 * h);
    if (it == n - 1)
        return (3.0 * F.at(ix, n - 1) - 4.0 * F.at(ix, n - 2) + F.at(ix, n - 3)) /
               (2.0 * h);
    return fd_dt(F, ix, it, 2);
}

} // namespace toricray
