#include "toricray/weights.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "toricray/errors.hpp"

namespace toricray {

Rational WeightSystem::g(const std::vector<Rational>& p) const {
    if (kind == Kind::Trivial) return Rational(0);
    if (kind != Kind::Generator)
        throw ConfigError("generator evaluation requested for a table weight system");
    if (pieces.empty()) throw ConfigError("generator has no affine pieces");
    Rational v = pieces[0].eval(p);
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        Rational w = pieces[i].eval(p);
        if (comb == Combinator::Max) v = std::max(v, w);
        else v = std::min(v, w);
    }
    return v;
}

Rational WeightSystem::max_abs_g(const Polytope& P) const {
    if (kind != Kind::Generator) return Rational(0);
    Rational best(0);
    for (const auto& v : P.vertices) {
        Rational a = abs(g(v));
        if (a > best) best = a;
    }
    return best;
}

bool WeightSystem::concave_on(const Polytope& P) const {
    if (kind != Kind::Generator) return true;
    // PL functions are concave iff midpoint-concave on a fine rational grid.
    LatticeIndex fine = lattice_points(P, 8);
    std::vector<std::vector<Rational>> pts;
    for (const auto& a : fine.points) {
        std::vector<Rational> p(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) p[i] = Rational(a[i], 8);
        pts.push_back(p);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            std::vector<Rational> mid(pts[i].size());
            for (std::size_t c = 0; c < mid.size(); ++c)
                mid[c] = (pts[i][c] + pts[j][c]) / 2;
            if (2 * g(mid) < g(pts[i]) + g(pts[j])) return false;
        }
    }
    return true;
}

std::vector<long> weights(const WeightSystem& ws, const LatticeIndex& idx) {
    std::size_t N = idx.size();
    std::vector<long> eta(N, 0);
    if (ws.kind == WeightSystem::Kind::Trivial) return eta;

    if (ws.kind == WeightSystem::Kind::Generator) {
        for (std::size_t i = 0; i < N; ++i) {
            std::vector<Rational> p(idx.points[i].size());
            for (std::size_t c = 0; c < p.size(); ++c)
                p[c] = Rational(idx.points[i][c], idx.k);
            Rational v = Rational(idx.k) * ws.g(p);
            BigInt z = is_integral(v)             ? numerator(v)
                       : ws.rounding == Rounding::Ceil ? ceil_rational(v)
                                                       : floor_rational(v);
            eta[i] = to_long(z);
        }
        return eta;
    }

    // Table: every lattice point of kP must be covered exactly once.
    std::map<std::vector<long>, long> rows;
    for (const auto& r : ws.table)
        if (r.k == idx.k) rows[r.alpha] = r.eta;
    for (std::size_t i = 0; i < N; ++i) {
        auto it = rows.find(idx.points[i]);
        if (it == rows.end())
            throw ConfigError("weight table is missing a lattice point at level " +
                              std::to_string(idx.k));
        eta[i] = it->second;
    }
    return eta;
}

std::vector<Rational> traceless_weights(const std::vector<long>& eta) {
    Rational mean(trace_sum(eta), (long)eta.size());
    std::vector<Rational> lam(eta.size());
    Rational check(0);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        lam[i] = Rational(eta[i]) - mean;
        check += lam[i];
    }
    if (check != 0)
        throw InvariantViolation("traceless weights do not sum to zero");
    return lam;
}

long trace_sum(const std::vector<long>& eta) {
    long s = 0;
    for (long e : eta) s += e;
    return s;
}

Rational trace_ratio(const std::vector<long>& eta, int k) {
    return Rational(trace_sum(eta)) / (Rational(k) * Rational((long)eta.size()));
}

std::vector<std::pair<std::vector<long>, long>> product_compatibility_defects(
    const WeightSystem& ws, const Polytope& P, int k) {
    std::vector<std::pair<std::vector<long>, long>> defects;
    if (ws.kind != WeightSystem::Kind::Generator) return defects;
    LatticeIndex idx1 = lattice_points(P, 1);
    LatticeIndex idxk = lattice_points(P, k);
    auto eta1 = weights(ws, idx1);
    auto etak = weights(ws, idxk);
    for (std::size_t b = 0; b < idx1.size(); ++b) {
        std::vector<Rational> p(idx1.points[b].size());
        for (std::size_t c = 0; c < p.size(); ++c) p[c] = Rational(idx1.points[b][c]);
        if (!is_integral(ws.g(p))) continue;
        std::vector<long> kb(idx1.points[b].size());
        for (std::size_t c = 0; c < kb.size(); ++c) kb[c] = k * idx1.points[b][c];
        long pos = idxk.find(kb);
        if (pos < 0) continue;
        long defect = etak[pos] - (long)k * eta1[b];
        if (defect != 0) defects.push_back({idx1.points[b], defect});
    }
    return defects;
}

WeightSystem trivial_weights() { return WeightSystem{}; }

WeightSystem generator_weights(std::vector<AffinePiece> pieces, Combinator comb,
                               Rounding rounding, std::string label) {
    WeightSystem ws;
    ws.kind = WeightSystem::Kind::Generator;
    ws.pieces = std::move(pieces);
    ws.comb = comb;
    ws.rounding = rounding;
    ws.label = std::move(label);
    return ws;
}

WeightSystem table_weights(std::vector<WeightTableRow> rows, std::string label) {
    WeightSystem ws;
    ws.kind = WeightSystem::Kind::Table;
    ws.table = std::move(rows);
    ws.label = std::move(label);
    return ws;
}

std::vector<WeightTableRow> load_weight_table(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open weight table " + path);
    std::vector<WeightTableRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<long> vals;
        while (std::getline(ss, cell, ','))
            if (!cell.empty()) vals.push_back(std::stol(cell));
        if (vals.empty()) continue;
        if ((int)vals.size() != dim + 2)
            throw ConfigError("weight table row needs k," + std::to_string(dim) +
                              " alpha columns,eta");
        WeightTableRow r;
        r.k = (int)vals[0];
        r.alpha.assign(vals.begin() + 1, vals.end() - 1);
        r.eta = vals.back();
        rows.push_back(r);
    }
    return rows;
}

} // namespace toricray
