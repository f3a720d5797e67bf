#ifndef TORICRAY_CONFIG_HPP
#define TORICRAY_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toricray/grid.hpp"
#include "toricray/metric.hpp"
#include "toricray/polytope.hpp"
#include "toricray/weights.hpp"

namespace toricray {

struct RunConfig {
    Polytope polytope;
    ToricMetric metric;
    WeightSystem weights;

    std::vector<int> levels{1, 2, 4, 8, 16, 32};
    int k_cut = 8;
    std::vector<int> futaki_samples{2, 4, 6, 8};

    double x_min = -20.0, x_max = 20.0, t_depth = 8.0;
    std::vector<int> resolutions{128, 256};

    double quad_tol = 1e-12;
    double gram_tol = 1e-10;
    double sharp_tol = 1e-12;
    double support_tol = 1e-8;
    double comparison_ctol = 1.0;
    double psh_eig_tol = -1e-6;
    double mass_window = 4.0;
    double uniqueness_mass_tol = 1e-4;

    uint64_t seed = 12345;
    std::string out_dir = "out";
    int threads = 1;
    std::string label = "run";
    std::string config_hash;

    GridSpec grid(int resolution) const {
        GridSpec g;
        g.x_min = x_min;
        g.x_max = x_max;
        g.nx = resolution;
        g.T = t_depth;
        g.nt = resolution;
        return g;
    }
    GridSpec finest_grid() const { return grid(resolutions.back()); }

    void validate() const;
};

RunConfig config_from_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Affine expression like "1 - x1" or "1/2 - x1 + 3*x2" into a piece.
AffinePiece parse_affine(const std::string& expr, int dim);

} // namespace toricray

#endif
