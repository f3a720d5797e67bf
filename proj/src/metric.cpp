#include "toricray/metric.hpp"

#include <cmath>

#include "toricray/errors.hpp"
#include "toricray/rational.hpp"

namespace toricray {

namespace {

double bump_value(const ToricMetric& m, const std::vector<double>& x) {
    if (m.bump_amplitude == 0.0) return 0.0;
    double r2 = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        double c = m.bump_center.empty() ? 0.0 : m.bump_center[i];
        double d = x[i] - c;
        r2 += d * d;
    }
    return m.bump_amplitude * std::exp(-r2 / (2.0 * m.bump_width * m.bump_width));
}

} // namespace

double ToricMetric::f(const std::vector<double>& x) const {
    // log(1 + sum e^{x_i}) evaluated as a shifted log-sum-exp over {0, x_i}.
    double mx = 0.0;
    for (int i = 0; i < dim; ++i) mx = std::max(mx, x[i]);
    double s = std::exp(-mx);
    for (int i = 0; i < dim; ++i) s += std::exp(x[i] - mx);
    return mx + std::log(s) + bump_value(*this, x);
}

std::vector<double> ToricMetric::grad(const std::vector<double>& x) const {
    double mx = 0.0;
    for (int i = 0; i < dim; ++i) mx = std::max(mx, x[i]);
    double s = std::exp(-mx);
    for (int i = 0; i < dim; ++i) s += std::exp(x[i] - mx);
    std::vector<double> g(dim);
    for (int i = 0; i < dim; ++i) g[i] = std::exp(x[i] - mx) / s;
    if (bump_amplitude != 0.0) {
        double b = bump_value(*this, x);
        double w2 = bump_width * bump_width;
        for (int i = 0; i < dim; ++i) {
            double c = bump_center.empty() ? 0.0 : bump_center[i];
            g[i] += -b * (x[i] - c) / w2;
        }
    }
    return g;
}

Eigen::MatrixXd ToricMetric::hess(const std::vector<double>& x) const {
    double mx = 0.0;
    for (int i = 0; i < dim; ++i) mx = std::max(mx, x[i]);
    double s = std::exp(-mx);
    for (int i = 0; i < dim; ++i) s += std::exp(x[i] - mx);
    Eigen::VectorXd u(dim);
    for (int i = 0; i < dim; ++i) u(i) = std::exp(x[i] - mx) / s;
    Eigen::MatrixXd H = Eigen::MatrixXd(u.asDiagonal()) - u * u.transpose();
    if (bump_amplitude != 0.0) {
        double b = bump_value(*this, x);
        double w2 = bump_width * bump_width;
        Eigen::VectorXd d(dim);
        for (int i = 0; i < dim; ++i) {
            double c = bump_center.empty() ? 0.0 : bump_center[i];
            d(i) = x[i] - c;
        }
        H += b * (d * d.transpose() / (w2 * w2) - Eigen::MatrixXd::Identity(dim, dim) / w2);
    }
    return H;
}

double ToricMetric::hess_det(const std::vector<double>& x) const {
    if (dim == 1) return hess(x)(0, 0);
    return hess(x).determinant();
}

double ToricMetric::min_hessian_eig(double box, int samples_per_axis) const {
    double best = 1e300;
    auto probe = [&](const std::vector<double>& x) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess(x));
        best = std::min(best, es.eigenvalues().minCoeff());
    };
    if (dim == 1) {
        for (int i = 0; i < samples_per_axis; ++i) {
            double x = -box + 2.0 * box * i / (samples_per_axis - 1);
            probe({x});
        }
    } else {
        for (int i = 0; i < samples_per_axis; ++i)
            for (int j = 0; j < samples_per_axis; ++j) {
                double x = -box + 2.0 * box * i / (samples_per_axis - 1);
                double y = -box + 2.0 * box * j / (samples_per_axis - 1);
                probe({x, y});
            }
    }
    return best;
}

double ToricMetric::recession_mismatch(const Polytope& P, double R) const {
    if (P.dim != dim) throw ConfigError("metric/polytope dimension mismatch");
    std::vector<std::vector<Rational>> dirs;
    if (dim == 1) {
        dirs = {{Rational(1)}, {Rational(-1)}};
    } else {
        dirs = {{Rational(1), Rational(0)},  {Rational(-1), Rational(0)},
                {Rational(0), Rational(1)},  {Rational(0), Rational(-1)},
                {Rational(1), Rational(1)},  {Rational(-1), Rational(-1)},
                {Rational(1), Rational(-1)}, {Rational(-1), Rational(1)}};
    }
    double worst = 0.0;
    for (const auto& d : dirs) {
        std::vector<double> x(dim);
        for (int i = 0; i < dim; ++i) x[i] = R * to_double(d[i]);
        double slope = f(x) / R;
        worst = std::max(worst, std::abs(slope - to_double(P.support(d))));
    }
    return worst;
}

ToricMetric fubini_study_metric(int dim, double V) {
    ToricMetric m;
    m.dim = dim;
    m.total_volume = V;
    return m;
}

} // namespace toricray
