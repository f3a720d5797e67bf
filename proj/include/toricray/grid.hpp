#ifndef TORICRAY_GRID_HPP
#define TORICRAY_GRID_HPP

#include <string>
#include <vector>

#include "toricray/errors.hpp"

namespace toricray {

// Uniform (x, t) grid: one x axis (the torus-invariant log coordinate; the
// shipped instances are curves) and t = log|w| in [-T, 0].
struct GridSpec {
    double x_min = -20.0;
    double x_max = 20.0;
    int nx = 256;
    double T = 8.0;
    int nt = 256;

    double hx() const { return (x_max - x_min) / (nx - 1); }
    double ht() const { return T / (nt - 1); }
    double x(int i) const { return x_min + i * hx(); }
    double t(int j) const { return -T + j * ht(); }
    std::size_t nodes() const { return std::size_t(nx) * nt; }

    bool operator==(const GridSpec& o) const {
        return x_min == o.x_min && x_max == o.x_max && nx == o.nx && T == o.T &&
               nt == o.nt;
    }

    void validate() const {
        if (nx < 8 || nt < 8) throw ConfigError("grid needs at least 8 nodes per axis");
        if (!(T > 0.0)) throw ConfigError("grid depth T must be positive");
        if (!(x_max > x_min)) throw ConfigError("empty x range");
    }
};

struct GridFunction {
    GridSpec spec;
    std::vector<double> values; // row-major, index = ix * nt + it
    int level = 0;              // k, or -1 for an envelope
    std::string config_hash;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s, int lvl = 0)
        : spec(s), values(s.nodes(), 0.0), level(lvl) {}

    double& at(int ix, int it) { return values[std::size_t(ix) * spec.nt + it]; }
    double at(int ix, int it) const { return values[std::size_t(ix) * spec.nt + it]; }

    void check_finite() const;
    double max_abs() const;
};

// Nodewise |a - b| sup norm; grids must match.
double sup_distance(const GridFunction& a, const GridFunction& b);

} // namespace toricray

#endif
