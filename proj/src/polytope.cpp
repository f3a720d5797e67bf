#include "toricray/polytope.hpp"

#include <algorithm>

#include "toricray/errors.hpp"

namespace toricray {

void Polytope::validate() const {
    if (dim < 1) throw ConfigError("polytope dimension must be >= 1");
    if (dim > 2) throw ConfigError("polytope dimension > 2 is not supported");
    if (vertices.empty()) throw ConfigError("polytope has no vertices");
    for (const auto& v : vertices)
        if ((int)v.size() != dim)
            throw ConfigError("polytope vertex has wrong dimension");
    if (dim == 1) {
        Rational lo = vertices[0][0], hi = vertices[0][0];
        for (const auto& v : vertices) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        if (lo == hi) throw ConfigError("degenerate polytope: zero length segment");
    } else {
        // Need three affinely independent vertices.
        bool full = false;
        for (size_t i = 0; i < vertices.size() && !full; ++i)
            for (size_t j = i + 1; j < vertices.size() && !full; ++j)
                for (size_t l = j + 1; l < vertices.size() && !full; ++l) {
                    Rational det = (vertices[j][0] - vertices[i][0]) * (vertices[l][1] - vertices[i][1]) -
                                   (vertices[j][1] - vertices[i][1]) * (vertices[l][0] - vertices[i][0]);
                    if (det != 0) full = true;
                }
        if (!full) throw ConfigError("degenerate polytope: vertices do not span dimension 2");
    }
}

Rational Polytope::support(const std::vector<Rational>& d) const {
    Rational best;
    bool first = true;
    for (const auto& v : vertices) {
        Rational s = 0;
        for (int i = 0; i < dim; ++i) s += v[i] * d[i];
        if (first || s > best) { best = s; first = false; }
    }
    return best;
}

long LatticeIndex::find(const std::vector<long>& alpha) const {
    auto it = std::lower_bound(points.begin(), points.end(), alpha);
    if (it != points.end() && *it == alpha) return it - points.begin();
    return -1;
}

namespace {

// Half-plane representation <n, x> <= c from the vertex hull (dim 2 only).
struct HalfPlane {
    Rational nx, ny, c;
};

std::vector<HalfPlane> hull_halfplanes(const Polytope& P) {
    std::vector<HalfPlane> planes;
    const auto& V = P.vertices;
    for (size_t i = 0; i < V.size(); ++i) {
        for (size_t j = i + 1; j < V.size(); ++j) {
            Rational nx = V[j][1] - V[i][1];
            Rational ny = V[i][0] - V[j][0];
            if (nx == 0 && ny == 0) continue;
            Rational c = nx * V[i][0] + ny * V[i][1];
            bool all_le = true, all_ge = true;
            for (const auto& v : V) {
                Rational s = nx * v[0] + ny * v[1];
                if (s > c) all_le = false;
                if (s < c) all_ge = false;
            }
            if (all_le) planes.push_back({nx, ny, c});
            if (all_ge) planes.push_back({-nx, -ny, -c});
        }
    }
    return planes;
}

} // namespace

LatticeIndex lattice_points(const Polytope& P, int k) {
    P.validate();
    if (k < 1) throw ConfigError("lattice level k must be >= 1");
    LatticeIndex idx;
    idx.k = k;

    if (P.dim == 1) {
        Rational lo = P.vertices[0][0], hi = lo;
        for (const auto& v : P.vertices) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        BigInt a = ceil_rational(Rational(k) * lo);
        BigInt b = floor_rational(Rational(k) * hi);
        for (BigInt m = a; m <= b; ++m) idx.points.push_back({to_long(m)});
        return idx;
    }

    auto planes = hull_halfplanes(P);
    Rational xlo = P.vertices[0][0], xhi = xlo, ylo = P.vertices[0][1], yhi = ylo;
    for (const auto& v : P.vertices) {
        xlo = std::min(xlo, v[0]); xhi = std::max(xhi, v[0]);
        ylo = std::min(ylo, v[1]); yhi = std::max(yhi, v[1]);
    }
    BigInt x0 = ceil_rational(Rational(k) * xlo), x1 = floor_rational(Rational(k) * xhi);
    BigInt y0 = ceil_rational(Rational(k) * ylo), y1 = floor_rational(Rational(k) * yhi);
    for (BigInt x = x0; x <= x1; ++x) {
        for (BigInt y = y0; y <= y1; ++y) {
            bool inside = true;
            for (const auto& hp : planes) {
                if (hp.nx * Rational(x) + hp.ny * Rational(y) > Rational(k) * hp.c) {
                    inside = false;
                    break;
                }
            }
            if (inside) idx.points.push_back({to_long(x), to_long(y)});
        }
    }
    return idx;
}

Polytope segment_polytope(const Rational& a, const Rational& b, std::string label) {
    Polytope P;
    P.dim = 1;
    P.vertices = {{a}, {b}};
    P.label = std::move(label);
    return P;
}

Polytope simplex_polytope(int dim, std::string label) {
    Polytope P;
    P.dim = dim;
    P.label = std::move(label);
    if (dim == 1) {
        P.vertices = {{Rational(0)}, {Rational(1)}};
    } else {
        P.vertices = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    }
    return P;
}

} // namespace toricray
