#ifndef TORICRAY_POLYTOPE_HPP
#define TORICRAY_POLYTOPE_HPP

#include <string>
#include <vector>

#include "toricray/rational.hpp"

namespace toricray {

// Convex lattice description of the variety: the polytope P lives in R^n and
// the level-k sections are indexed by the integer points of k*P.
struct Polytope {
    int dim = 0;
    std::vector<std::vector<Rational>> vertices; // each of size dim
    std::string label;

    void validate() const;
    // Support function sup_{p in P} <p, d> for an integer direction d.
    Rational support(const std::vector<Rational>& d) const;
};

struct LatticeIndex {
    int k = 0;
    // Integer points of k*P in lexicographic order; the order is part of the
    // contract (weights, norms and expansions are all aligned to it).
    std::vector<std::vector<long>> points;

    std::size_t size() const { return points.size(); }
    long find(const std::vector<long>& alpha) const; // -1 if absent
};

// Enumerates (k*P) cap Z^n in lexicographic order. Dimensions 1 and 2 are
// supported; the shipped instances are all curves.
LatticeIndex lattice_points(const Polytope& P, int k);

Polytope segment_polytope(const Rational& a, const Rational& b, std::string label = "segment");
Polytope simplex_polytope(int dim, std::string label = "simplex");

} // namespace toricray

#endif
