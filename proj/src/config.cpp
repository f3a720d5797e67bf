#include "toricray/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "toricray/numerics.hpp"

namespace toricray {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_ini(const std::string& text) {
    std::map<std::string, Section> sections;
    std::string current = "";
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

std::string get(const Section& s, const std::string& key, const std::string& dflt) {
    auto it = s.find(key);
    return it == s.end() ? dflt : it->second;
}

double get_d(const Section& s, const std::string& key, double dflt) {
    auto it = s.find(key);
    return it == s.end() ? dflt : std::stod(it->second);
}

std::vector<int> get_ints(const Section& s, const std::string& key,
                          std::vector<int> dflt) {
    auto it = s.find(key);
    if (it == s.end()) return dflt;
    std::vector<int> out;
    std::stringstream ss(it->second);
    int v;
    while (ss >> v) out.push_back(v);
    return out;
}

} // namespace

AffinePiece parse_affine(const std::string& expr, int dim) {
    AffinePiece piece;
    piece.c0 = Rational(0);
    piece.coef.assign(dim, Rational(0));

    // Split into sign-carrying terms.
    std::vector<std::pair<int, std::string>> terms;
    std::string cur;
    int sign = 1;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        char c = expr[i];
        if ((c == '+' || c == '-') && i > 0 && expr[i - 1] != '*' && expr[i - 1] != '/') {
            if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});
            sign = (c == '-') ? -1 : 1;
            cur.clear();
        } else if (c == '-' && i == 0) {
            sign = -1;
        } else if (c == '+' && i == 0) {
            sign = 1;
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});
    if (terms.empty()) throw ConfigError("empty affine expression '" + expr + "'");

    for (auto& [sgn, term] : terms) {
        auto xpos = term.find('x');
        if (xpos == std::string::npos) {
            piece.c0 += Rational(sgn) * parse_rational(term);
            continue;
        }
        std::string coef_part = trim(term.substr(0, xpos));
        if (!coef_part.empty() && coef_part.back() == '*')
            coef_part = trim(coef_part.substr(0, coef_part.size() - 1));
        Rational coef = coef_part.empty() ? Rational(1) : parse_rational(coef_part);
        std::string var_part = trim(term.substr(xpos + 1));
        int axis = var_part.empty() ? 1 : std::stoi(var_part);
        if (axis < 1 || axis > dim)
            throw ConfigError("variable x" + std::to_string(axis) +
                              " outside polytope dimension in '" + expr + "'");
        piece.coef[axis - 1] += Rational(sgn) * coef;
    }
    return piece;
}

void RunConfig::validate() const {
    polytope.validate();
    if (levels.empty()) throw ConfigError("levels list is empty");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw ConfigError("levels must be sorted ascending");
    if (resolutions.empty()) throw ConfigError("at least one resolution required");
    for (double tol : {quad_tol, gram_tol, sharp_tol, support_tol, comparison_ctol})
        if (!(tol > 0)) throw ConfigError("tolerances must be positive");
    if (!(t_depth > 0)) throw ConfigError("t_depth must be positive");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

RunConfig config_from_text(const std::string& text) {
    auto sections = parse_ini(text);
    RunConfig cfg;
    cfg.config_hash = fnv1a_hex(text);

    const Section& poly = sections["polytope"];
    cfg.polytope.dim = (int)get_d(poly, "dimension", 1);
    cfg.polytope.label = get(poly, "label", "polytope");
    std::string verts = get(poly, "vertices", "0 ; 1");
    for (const auto& vstr : split(verts, ';')) {
        if (vstr.empty()) continue;
        std::vector<Rational> v;
        std::stringstream ss(vstr);
        std::string cell;
        while (ss >> cell) v.push_back(parse_rational(cell));
        cfg.polytope.vertices.push_back(v);
    }

    const Section& met = sections["metric"];
    cfg.metric = fubini_study_metric(cfg.polytope.dim, get_d(met, "volume", 1.0));
    cfg.metric.name = get(met, "type", "fubini_study");
    cfg.metric.bump_amplitude = get_d(met, "bump_amplitude", 0.0);
    cfg.metric.bump_width = get_d(met, "bump_width", 1.0);
    cfg.metric.bump_center.assign(cfg.polytope.dim, get_d(met, "bump_center", 0.0));
    cfg.metric.angular_twist = get_d(met, "angular_twist", 0.0);
    if (cfg.metric.name != "fubini_study" && cfg.metric.name != "fubini_study+bump")
        throw ConfigError("unknown metric type '" + cfg.metric.name + "'");

    const Section& wts = sections["weights"];
    std::string wtype = get(wts, "type", "trivial");
    std::string rounding_s = get(wts, "rounding", "ceil");
    Rounding rounding = rounding_s == "floor" ? Rounding::Floor : Rounding::Ceil;
    if (rounding_s != "floor" && rounding_s != "ceil")
        throw ConfigError("rounding must be ceil or floor");
    if (wtype == "trivial") {
        cfg.weights = trivial_weights();
    } else if (wtype == "generator") {
        std::vector<AffinePiece> pieces;
        for (const auto& pstr : split(get(wts, "pieces", "0"), ','))
            pieces.push_back(parse_affine(pstr, cfg.polytope.dim));
        Combinator comb =
            get(wts, "combinator", "max") == "min" ? Combinator::Min : Combinator::Max;
        cfg.weights = generator_weights(pieces, comb, rounding,
                                        get(wts, "label", "generator"));
    } else if (wtype == "table") {
        std::string path = get(wts, "table", "");
        if (path.empty()) throw ConfigError("weight table path missing");
        cfg.weights = table_weights(load_weight_table(path, cfg.polytope.dim),
                                    get(wts, "label", "table"));
    } else {
        throw ConfigError("unknown weight type '" + wtype + "'");
    }

    const Section& lev = sections["levels"];
    cfg.levels = get_ints(lev, "list", cfg.levels);
    cfg.k_cut = (int)get_d(lev, "k_cut", 8);
    cfg.futaki_samples = get_ints(lev, "futaki_samples", cfg.futaki_samples);

    const Section& grd = sections["grid"];
    cfg.x_min = get_d(grd, "x_min", -20.0);
    cfg.x_max = get_d(grd, "x_max", 20.0);
    cfg.t_depth = get_d(grd, "t_depth", 8.0);
    cfg.resolutions = get_ints(grd, "resolutions", cfg.resolutions);

    const Section& tol = sections["tolerances"];
    cfg.quad_tol = get_d(tol, "quadrature", 1e-12);
    cfg.gram_tol = get_d(tol, "gram", 1e-10);
    cfg.sharp_tol = get_d(tol, "sharp_identity", 1e-12);
    cfg.support_tol = get_d(tol, "support", 1e-8);
    cfg.comparison_ctol = get_d(tol, "comparison_ctol", 1.0);
    cfg.psh_eig_tol = get_d(tol, "psh_eig", -1e-6);
    cfg.mass_window = get_d(tol, "mass_window", 4.0);
    cfg.uniqueness_mass_tol = get_d(tol, "uniqueness_mass", 1e-4);

    const Section& run = sections["run"];
    cfg.seed = (uint64_t)get_d(run, "seed", 12345);
    cfg.out_dir = get(run, "out_dir", "out");
    cfg.threads = (int)get_d(run, "threads", 1);
    cfg.label = get(run, "label", cfg.polytope.label);

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_text(ss.str());
}

} // namespace toricray
