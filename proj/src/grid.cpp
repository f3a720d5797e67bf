#include "toricray/grid.hpp"

#include <cmath>

namespace toricray {

void GridFunction::check_finite() const {
    for (double v : values)
        if (!std::isfinite(v))
            throw NumericalError("grid function holds a non-finite value");
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec == b.spec)) throw ConfigError("grid mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace toricray
