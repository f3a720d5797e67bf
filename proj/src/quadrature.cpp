#include "toricray/quadrature.hpp"

#include <cmath>
#include <vector>

#include "toricray/errors.hpp"

namespace toricray {

namespace {

// Gauss-Legendre abscissae/weights on [-1,1].
const double GL7_X[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
const double GL7_W[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

const double GL15_X[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
const double GL15_W[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

struct Panel {
    double a, b;
};

void panel_eval(const std::function<double(double)>& f, double a, double b,
                double& v15, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s7 = 0.0, s15 = 0.0;
    for (int i = 0; i < 7; ++i) s7 += GL7_W[i] * f(c + h * GL7_X[i]);
    for (int i = 0; i < 15; ++i) s15 += GL15_W[i] * f(c + h * GL15_X[i]);
    v15 = h * s15;
    err = std::abs(h * (s15 - s7));
}

} // namespace

QuadResult adaptive_gl(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, int max_panels) {
    std::vector<Panel> work{{a, b}};
    double total = 0.0, total_err = 0.0;
    int used = 0;

    // First pass to seed the scale.
    double scale = 0.0;
    {
        double v, e;
        panel_eval(f, a, b, v, e);
        scale = std::abs(v);
    }

    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        double v, e;
        panel_eval(f, p.a, p.b, v, e);
        ++used;
        double local_tol = rel_tol * std::max(scale, std::abs(total)) *
                           std::max(1e-300, (p.b - p.a) / (b - a));
        if (e <= local_tol || (p.b - p.a) < 1e-13 * (b - a)) {
            total += v;
            total_err += e;
            scale = std::max(scale, std::abs(total));
        } else {
            if (used + (int)work.size() > max_panels)
                throw NumericalError("adaptive quadrature did not converge", e,
                                     local_tol);
            double mid = 0.5 * (p.a + p.b);
            work.push_back({p.a, mid});
            work.push_back({mid, p.b});
        }
    }
    QuadResult r;
    r.value = total;
    r.abs_error = total_err;
    r.panels = used;
    if (!std::isfinite(total))
        throw NumericalError("quadrature produced a non-finite value");
    return r;
}

QuadResult integrate_decaying(const std::function<double(double)>& f, double lo0,
                              double hi0, double rel_tol, double tail_rel,
                              double max_extent) {
    double lo = lo0, hi = hi0;
    double peak = 0.0;
    const int probe = 33;
    for (int i = 0; i < probe; ++i) {
        double x = lo + (hi - lo) * i / (probe - 1);
        peak = std::max(peak, std::abs(f(x)));
    }
    double step = 0.25 * (hi0 - lo0) + 1.0;
    while (std::abs(f(lo)) > tail_rel * peak && hi - lo < max_extent) {
        lo -= step;
        peak = std::max(peak, std::abs(f(lo)));
        step *= 1.5;
    }
    step = 0.25 * (hi0 - lo0) + 1.0;
    while (std::abs(f(hi)) > tail_rel * peak && hi - lo < max_extent) {
        hi += step;
        peak = std::max(peak, std::abs(f(hi)));
        step *= 1.5;
    }
    return adaptive_gl(f, lo, hi, rel_tol);
}

} // namespace toricray
