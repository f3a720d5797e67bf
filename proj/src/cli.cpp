#include "toricray/cli.hpp"

#include <CLI11.hpp>

#include "toricray/parallel.hpp"
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "toricray/basis.hpp"
#include "toricray/bergman.hpp"
#include "toricray/comparison.hpp"
#include "toricray/futaki.hpp"
#include "toricray/io.hpp"
#include "toricray/ma.hpp"
#include "toricray/moments.hpp"
#include "toricray/numerics.hpp"
#include "toricray/regularity.hpp"
#include "toricray/triangular.hpp"

using ordered_json = nlohmann::ordered_json;

namespace toricray {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return cfg.out_dir + "/" + cfg.label + "_" + name;
}

void write_json_file(const RunConfig& cfg, const std::string& name,
                     ordered_json j) {
    j["config_hash"] = cfg.config_hash;
    write_text(out_path(cfg, name), j.dump(2) + "\n");
}

RayOptions ray_options(const RunConfig& cfg) {
    RayOptions opt;
    opt.quad_tol = cfg.quad_tol;
    opt.gram_tol = cfg.gram_tol;
    opt.sharp_tol = cfg.sharp_tol;
    opt.k_cut = cfg.k_cut;
    opt.threads = cfg.threads;
    return opt;
}

ordered_json diagnostics_json(const RayBundle& rb) {
    ordered_json j;
    j["M"] = rb.M;
    j["V"] = rb.V;
    j["sup_sup_abs_psi"] = rb.sup_sup_psi;
    j["boundary_decay_loglog_slope"] = rb.decay_slope;
    j["usc_filter_effect"] = rb.env.usc_filter_effect;
    j["envelope_levels"] = rb.env.used_levels;
    ordered_json levels = ordered_json::array();
    for (const auto& d : rb.diag) {
        ordered_json e;
        e["k"] = d.k;
        e["sections"] = d.sections;
        e["a_k"] = d.a_k;
        e["psi_min"] = d.psi_min;
        e["psi_max"] = d.psi_max;
        e["uniform_lower_bound"] = d.lemma_lower_bound;
        e["traceless_identity_residual"] = d.sharp_residual;
        e["psh_min_eig"] = d.psh_min_eig_cov;
        e["psh_min_eig_fd"] = d.psh_min_eig_fd;
        e["t_deriv_sup"] = d.t_deriv_sup;
        e["t_deriv_bound"] = d.t_deriv_bound;
        e["t_deriv_sup_psi"] = d.t_deriv_sup_psi;
        e["sup_abs_phi"] = d.sup_abs_phi;
        e["phi_at_depth"] = d.value_at_depth;
        levels.push_back(e);
    }
    j["levels"] = levels;
    return j;
}

void cmd_ray(const RunConfig& cfg) {
    RayBundle rb = build_ray_bundle(cfg.polytope, cfg.metric, cfg.weights,
                                    cfg.levels, cfg.finest_grid(), ray_options(cfg));
    std::ofstream f(out_path(cfg, "ray.csv"));
    if (!f) throw ConfigError("cannot write ray.csv");
    f << "# config_hash=" << cfg.config_hash << "\n";
    f << "x,t,value,level\n";
    const GridSpec& g = rb.env.envelope.spec;
    for (std::size_t li = 0; li < rb.levels.size(); ++li)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int it = 0; it < g.nt; ++it)
                f << format17(g.x(ix)) << ',' << format17(g.t(it)) << ','
                  << format17(rb.phis[li].at(ix, it)) << ',' << rb.levels[li] << "\n";
    for (int ix = 0; ix < g.nx; ++ix)
        for (int it = 0; it < g.nt; ++it)
            f << format17(g.x(ix)) << ',' << format17(g.t(it)) << ','
              << format17(rb.env.envelope.at(ix, it)) << ",envelope\n";
    f.close();
    write_json_file(cfg, "diagnostics.json", diagnostics_json(rb));
    std::cout << "ray: " << rb.levels.size() << " levels + envelope on " << g.nx
              << "x" << g.nt << " grid -> " << out_path(cfg, "ray.csv") << "\n";
}

void cmd_bounds(const RunConfig& cfg) {
    RayBundle rb = build_ray_bundle(cfg.polytope, cfg.metric, cfg.weights,
                                    cfg.levels, cfg.finest_grid(), ray_options(cfg));
    ordered_json j = diagnostics_json(rb);
    write_json_file(cfg, "bounds.json", j);
    std::cout << "bounds: slope " << rb.decay_slope << ", sup_k sup|Psi_k| = "
              << rb.sup_sup_psi << " -> " << out_path(cfg, "bounds.json") << "\n";
}

void cmd_triangular(const RunConfig& cfg, int k_max) {
    if (k_max <= 0) k_max = 16;
    OrthonormalBasis basis1 =
        build_basis(cfg.polytope, 1, cfg.metric, cfg.quad_tol, cfg.gram_tol,
                    cfg.threads);
    LevelWeights lw1 = level_weights(cfg.weights, basis1.idx);

    std::ofstream f(out_path(cfg, "triangular.csv"));
    if (!f) throw ConfigError("cannot write triangular.csv");
    f << "# config_hash=" << cfg.config_hash << "\n";
    f << "beta,k,alpha,a,eta_alpha,k_eta_beta,bound\n";

    ordered_json violations = ordered_json::array();
    bool all_ok = true;
    for (int k = 1; k <= k_max; ++k) {
        OrthonormalBasis basisk =
            k == 1 ? basis1
                   : build_basis(cfg.polytope, k, cfg.metric, cfg.quad_tol,
                                 cfg.gram_tol, cfg.threads);
        LevelWeights lwk = level_weights(cfg.weights, basisk.idx);
        for (std::size_t b = 0; b < basis1.idx.size(); ++b) {
            const auto& beta = basis1.idx.points[b];
            TriangularExpansion ex =
                expand_power(beta, k, basis1, basisk, cfg.metric, cfg.quad_tol,
                             cfg.support_tol);
            SupportReport sr = verify_support(ex, basis1, lw1, basisk, lwk);
            CoefBoundReport br = verify_bound(ex);
            for (std::size_t i = 0; i < ex.a.size(); ++i) {
                if (!ex.support[i]) continue;
                f << beta[0] << ',' << k << ',' << basisk.idx.points[i][0] << ','
                  << format17(ex.a[i]) << ',' << lwk.eta[i] << ','
                  << k * lw1.eta[b] << ',' << format17(ex.bound) << "\n";
            }
            if (!sr.ok || !br.ok) {
                all_ok = false;
                for (const auto& v : sr.violations) {
                    ordered_json jv;
                    jv["beta"] = beta[0];
                    jv["k"] = k;
                    jv["alpha"] = v.alpha[0];
                    jv["a"] = v.a;
                    jv["eta_alpha"] = v.eta_alpha;
                    jv["k_eta_beta"] = v.k_eta_beta;
                    violations.push_back(jv);
                }
                if (!br.ok) {
                    ordered_json jv;
                    jv["beta"] = beta[0];
                    jv["k"] = k;
                    jv["coefficient_bound_margin"] = br.margin;
                    violations.push_back(jv);
                }
            }
        }
    }
    f.close();
    if (!all_ok) {
        std::string record = out_path(cfg, "violation.json");
        ordered_json j;
        j["config_hash"] = cfg.config_hash;
        j["violations"] = violations;
        write_text(record, j.dump(2) + "\n");
        throw InvariantViolation("lower-triangular support/bound violated; record in " +
                                     record,
                                 record);
    }
    std::cout << "triangular: support and bound hold for k <= " << k_max << " -> "
              << out_path(cfg, "triangular.csv") << "\n";
}

void cmd_mass(const RunConfig& cfg) {
    double kappa = ma_calibration(cfg.metric, cfg.quad_tol);
    GridSpec g = cfg.finest_grid();
    std::vector<int> lv;
    std::vector<GridFunction> fulls;
    for (int k : cfg.levels) {
        if (k < 4) continue;
        OrthonormalBasis b = build_basis(cfg.polytope, k, cfg.metric, cfg.quad_tol,
                                         cfg.gram_tol, cfg.threads);
        LevelWeights lw = level_weights(cfg.weights, b.idx);
        fulls.push_back(add_background(phi_k(b, lw, cfg.metric, g, cfg.threads),
                                       cfg.metric));
        lv.push_back(k);
    }
    MassDecay md = mass_decay(fulls, lv, kappa, -cfg.mass_window, 0.0);
    std::ofstream f(out_path(cfg, "mass.csv"));
    f << "# config_hash=" << cfg.config_hash << "\n";
    f << "k,mass\n";
    for (std::size_t i = 0; i < md.levels.size(); ++i)
        f << md.levels[i] << ',' << format17(md.masses[i]) << "\n";
    f.close();
    ordered_json j;
    j["degenerate"] = md.degenerate;
    j["slope"] = md.slope;
    j["fitted_C"] = md.fitted_C;
    j["max_mass_over_C_k"] = md.max_ratio;
    write_json_file(cfg, "mass.json", j);
    std::cout << "mass: " << (md.degenerate ? "degenerate baseline" :
                              "slope " + format17(md.slope)) << " -> "
              << out_path(cfg, "mass.csv") << "\n";
}

GridSpec comparison_grid() {
    GridSpec g;
    g.x_min = -6;
    g.x_max = 6;
    g.nx = 129;
    g.T = 6;
    g.nt = 129;
    return g;
}

void cmd_compare(const RunConfig& cfg) {
    double kappa = ma_calibration(cfg.metric, cfg.quad_tol);
    ComparisonHarnessResult res =
        comparison_harness(cfg.metric, comparison_grid(), 100, cfg.seed, kappa,
                           cfg.comparison_ctol, cfg.out_dir);
    std::ofstream f(out_path(cfg, "comparison.csv"));
    f << "# config_hash=" << cfg.config_hash << "\n";
    f << "draw,eps,radius,cx,ct,mass_u,mass_v,tolerance,ok\n";
    for (const auto& d : res.draws)
        f << d.draw << ',' << format17(d.eps) << ',' << format17(d.radius) << ','
          << format17(d.cx) << ',' << format17(d.ct) << ',' << format17(d.mass_u)
          << ',' << format17(d.mass_v) << ',' << format17(d.tolerance) << ','
          << (d.ok ? 1 : 0) << "\n";
    f.close();
    std::cout << "compare: " << res.draws.size() << " draws, worst margin "
              << res.worst_margin << " -> " << out_path(cfg, "comparison.csv")
              << "\n";
}

void cmd_regularity(const RunConfig& cfg) {
    if (cfg.resolutions.size() < 2)
        throw ConfigError("regularity needs two resolutions in the config");
    RayOptions opt = ray_options(cfg);
    RayBundle coarse = build_ray_bundle(cfg.polytope, cfg.metric, cfg.weights,
                                        cfg.levels, cfg.grid(cfg.resolutions[0]), opt);
    RayBundle fine = build_ray_bundle(cfg.polytope, cfg.metric, cfg.weights,
                                      cfg.levels, cfg.grid(cfg.resolutions[1]), opt);
    std::vector<double> alphas{0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
    RegularityReport rep =
        holder_estimate(coarse.env.envelope, fine.env.envelope, alphas);
    ordered_json j;
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : rep.verdicts) {
        ordered_json e;
        e["alpha"] = v.alpha;
        e["q_coarse"] = v.q_coarse;
        e["q_fine"] = v.q_fine;
        e["ratio"] = v.ratio;
        e["verdict"] = v.bounded ? "bounded" : "diverging";
        verdicts.push_back(e);
    }
    j["verdicts"] = verdicts;
    j["second_difference_max"] = rep.second_difference_max;
    ordered_json seps = ordered_json::array();
    for (double s : rep.fine.separations) seps.push_back(s);
    j["separations"] = seps;
    write_json_file(cfg, "regularity.json", j);
    std::cout << "regularity: " << rep.verdicts.size() << " alpha verdicts -> "
              << out_path(cfg, "regularity.json") << "\n";
}

void cmd_moments(const RunConfig& cfg) {
    RayBundle rb = build_ray_bundle(cfg.polytope, cfg.metric, cfg.weights,
                                    cfg.levels, cfg.finest_grid(), ray_options(cfg));
    double kappa = ma_calibration(cfg.metric, cfg.quad_tol);
    MomentTable tab = moment_measure(rb.env.envelope, cfg.metric,
                                     {-0.5, -1.0, -2.0}, {1, 2, 3}, kappa);
    std::ofstream f(out_path(cfg, "moments.csv"));
    f << "# config_hash=" << cfg.config_hash << "\n";
    f << "t,mu_1";
    for (int o : tab.orders) f << ",mu_x" << o;
    for (std::size_t b = 0; b < tab.bump_centers.size(); ++b) f << ",mu_bump" << b;
    f << "\n";
    for (std::size_t ti = 0; ti < tab.t_used.size(); ++ti) {
        f << format17(tab.t_used[ti]);
        for (double v : tab.values[ti]) f << ',' << format17(v);
        f << "\n";
    }
    f.close();
    std::cout << "moments: " << tab.t_used.size() << " t-slices -> "
              << out_path(cfg, "moments.csv") << "\n";
}

void cmd_futaki(const RunConfig& cfg) {
    FutakiExpansion fe = futaki(cfg.weights, cfg.polytope, cfg.futaki_samples);
    std::cout << "F0=" << rational_str(fe.F0) << " F1=" << rational_str(fe.F1)
              << " residual=" << rational_str(fe.fit_residual) << "\n";
    ordered_json j;
    j["F0"] = rational_str(fe.F0);
    j["F1"] = rational_str(fe.F1);
    j["residual"] = rational_str(fe.fit_residual);
    j["k_samples"] = fe.k_samples;
    write_json_file(cfg, "futaki.json", j);
}

} // namespace

void run_command(const std::string& command, const RunConfig& cfg, int k_max) {
    ensure_dir(cfg.out_dir);
    if (cfg.weights.kind == WeightSystem::Kind::Generator &&
        !cfg.weights.concave_on(cfg.polytope))
        std::cerr << "warning: generator is not concave on P (conventional, "
                     "formulas unaffected)\n";
    if (command == "ray") cmd_ray(cfg);
    else if (command == "bounds") cmd_bounds(cfg);
    else if (command == "triangular") cmd_triangular(cfg, k_max);
    else if (command == "mass") cmd_mass(cfg);
    else if (command == "compare") cmd_compare(cfg);
    else if (command == "regularity") cmd_regularity(cfg);
    else if (command == "moments") cmd_moments(cfg);
    else if (command == "futaki") cmd_futaki(cfg);
    else if (command == "all") {
        cmd_ray(cfg);
        cmd_bounds(cfg);
        cmd_triangular(cfg, k_max);
        cmd_mass(cfg);
        cmd_compare(cfg);
        cmd_regularity(cfg);
        cmd_moments(cfg);
        cmd_futaki(cfg);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"toricray: Bergman approximations to geodesic rays on toric "
                 "varieties, with the quantitative diagnostics"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    int k_max = -1, resolution = 0, threads = 0;
    long long seed = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--k", k_max, "max level for the triangular sweep");
        sub->add_option("--seed", seed, "random seed override");
        sub->add_option("--threads", threads, "worker thread count");
        sub->add_option("--resolution", resolution, "grid resolution override");
    };

    std::vector<std::string> names{"ray",     "bounds",     "triangular",
                                   "mass",    "compare",    "regularity",
                                   "moments", "futaki",     "all"};
    for (const auto& n : names) add_common(app.add_subcommand(n));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (seed >= 0) cfg.seed = (uint64_t)seed;
        if (threads > 0) cfg.threads = threads;
        else if (cfg.threads == 1) cfg.threads = default_threads();
        if (resolution > 0) cfg.resolutions = {resolution, resolution * 2};
        for (const auto& n : names)
            if (app.got_subcommand(n)) run_command(n, cfg, k_max);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ConfigError::exit_code;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return NumericalError::exit_code;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return InvariantViolation::exit_code;
    }
}

} // namespace toricray
