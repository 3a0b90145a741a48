#include "holdervar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "holdervar/report.hpp"

namespace holdervar {

namespace {

double power_cusp_value(double gamma, const SpaceTimePoint& p) {
    double r2 = 0.0;
    for (int a = 0; a < p.dim; ++a) r2 += p.x[a] * p.x[a];
    const double r = std::sqrt(r2);
    const double base = r + std::sqrt(std::max(0.0, p.t));
    const double expo = (gamma + r) * (gamma + p.t);
    return base == 0.0 ? 0.0 : std::pow(base, expo);
}

} // namespace

QnProbe optimality_probe(double gamma, double zeta, double beta, int n_max, int dim) {
    if (!(gamma > std::exp(-2.0) && gamma < 1.0))
        throw std::invalid_argument("optimality_probe: gamma out of range");
    if (!(zeta > 0.0 && zeta < 1.0 - gamma))
        throw std::invalid_argument("optimality_probe: zeta out of range");
    const double alpha_minus = gamma * gamma;
    if (!(beta > alpha_minus && beta < 1.0))
        throw std::invalid_argument(
            "optimality_probe: beta must lie strictly between alpha_minus and 1");
    if (n_max < 2) throw std::invalid_argument("optimality_probe: n_max must be >= 2");

    SpaceTimePoint origin;
    origin.dim = dim;

    QnProbe probe;
    probe.q.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        SpaceTimePoint theta;
        theta.dim = dim;
        theta.x[0] = zeta / n;
        theta.t = 1.0 / (static_cast<double>(n) * n);
        const double dist = parabolic_distance(theta, origin);
        const double fv = power_cusp_value(gamma, theta);
        probe.q.push_back(std::abs(fv) / std::pow(dist, beta));
    }
    probe.ratio_last_first = probe.q.back() / probe.q.front();

    // nondecreasing tail starting no later than n_max/2
    int tail_start = n_max;
    for (int i = n_max - 1; i >= 1; --i) {
        if (probe.q[i] >= probe.q[i - 1] * (1.0 - 1e-12))
            tail_start = i;
        else
            break;
    }
    probe.eventually_increasing = tail_start <= n_max / 2;
    return probe;
}

InterpConstant minimal_interp_constant(
    const std::vector<std::pair<std::string, GridFunction>>& corpus, const VariableExponent& alpha,
    const VariableExponent& beta, int k, int j, double eps) {
    if (!(j + beta.alpha_plus() < k + alpha.alpha_minus()))
        throw std::invalid_argument(
            "minimal_interp_constant: requires j + beta_plus < k + alpha_minus");
    InterpConstant out;
    for (const auto& [name, u] : corpus) {
        const double lhs = weighted_interior_seminorm(u, beta, j).value;
        const double rhs_semi = weighted_interior_seminorm(u, alpha, k).value;
        double u0 = 0.0;
        for (int id : u.dom().cylinder_nodes()) u0 = std::max(u0, std::abs(u.at(id)));
        if (u0 == 0.0) {
            if (lhs > eps * rhs_semi + 1e-12)
                throw std::runtime_error("minimal_interp_constant: zero |u|_0 with "
                                         "unsatisfiable inequality");
            continue;
        }
        const double c = std::max(0.0, (lhs - eps * rhs_semi) / u0);
        if (c > out.C) {
            out.C = c;
            out.argmax_field = name;
        }
    }
    return out;
}

double duhamel_residual(const GridFunction& f, const KernelSpec& spec,
                        std::span<const SpaceTimePoint> probes) {
    const GridDomain& d = f.dom();
    const double h = d.h, tau = d.tau;

    std::vector<SpaceTimePoint> pts;
    pts.reserve(probes.size() * (2 * d.dim + 3));
    for (const SpaceTimePoint& p : probes) {
        if (!(p.t - tau > 0.0 && p.t + tau <= d.t_end + 1e-12))
            throw std::invalid_argument("duhamel_residual: probe too close to the time ends");
        pts.push_back(p);
        for (int a = 0; a < d.dim; ++a) {
            SpaceTimePoint pm = p, pp = p;
            pm.x[a] -= h;
            pp.x[a] += h;
            pts.push_back(pm);
            pts.push_back(pp);
        }
        SpaceTimePoint tm = p, tp = p;
        tm.t -= tau;
        tp.t += tau;
        pts.push_back(tm);
        pts.push_back(tp);
    }

    PotentialOptions opts;
    opts.with_vs = false;
    const PotentialValues vals = heat_potential_at(f, spec, pts, opts);

    double sup = 0.0;
    const int stride = 2 * d.dim + 3;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double* v = vals.v.data() + i * stride;
        double lap = 0.0;
        for (int a = 0; a < d.dim; ++a) lap += (v[1 + 2 * a] - 2.0 * v[0] + v[2 + 2 * a]) / (h * h);
        const double vt = (v[stride - 1] - v[stride - 2]) / (2.0 * tau);
        const double res = vt - lap - f.eval(probes[i]);
        sup = std::max(sup, std::abs(res));
    }
    return sup;
}

InteriorEstimateProbe interior_estimate_probe(const GridFunction& u, const DerivativeBundle& du,
                                              const GridFunction& f, const VariableExponent& alpha,
                                              const SpaceTimePoint& P, double dist) {
    const GridDomain& d = u.dom();
    const double aP = alpha(P);
    const double fP = f.eval(P);

    InteriorEstimateProbe probe;

    // locate P as a node
    int pid = -1;
    for (int id : d.cylinder_nodes()) {
        const SpaceTimePoint q = d.node_point(id);
        if (parabolic_distance(P, q) < 1e-12) {
            pid = id;
            break;
        }
    }
    if (pid < 0) throw std::invalid_argument("interior_estimate_probe: P is not a grid node");

    for (int a = 0; a < d.dim; ++a)
        for (int bx = 0; bx < d.dim; ++bx)
            probe.lhs = std::max(probe.lhs, std::abs(du.hess_at(pid, a, bx)));

    double pointed = 0.0, fsup = 0.0, usup = 0.0;
    for (int id : d.cylinder_nodes()) {
        const SpaceTimePoint q = d.node_point(id);
        if (!semicube_contains(P, dist, q)) continue;
        ++probe.semicube_nodes;
        fsup = std::max(fsup, std::abs(f.at(id)));
        usup = std::max(usup, std::abs(u.at(id)));
        const double dq = parabolic_distance(P, q);
        if (dq > 0.0) pointed = std::max(pointed, std::abs(fP - f.at(id)) / std::pow(dq, aP));
    }
    probe.f_sup = fsup;
    probe.f_pointed_term = std::pow(dist, aP) * pointed;
    probe.u_term = usup / (dist * dist);
    const double rhs = probe.f_sup + probe.f_pointed_term + probe.u_term;
    probe.C = rhs > 0.0 ? probe.lhs / rhs : 0.0;
    return probe;
}

// ---------------------------------------------------------------------------
// Batch commands

namespace {

namespace fs = std::filesystem;

std::vector<int> levels_or(const ExperimentConfig& ec, std::vector<int> fallback) {
    std::vector<int> lv = ec.levels.empty() ? std::move(fallback) : ec.levels;
    for (std::size_t i = 1; i < lv.size(); ++i)
        if (lv[i] <= lv[i - 1])
            throw std::invalid_argument("levels must be strictly increasing");
    return lv;
}

int scaled_nt(const Config& c, int nx) {
    const int nx0 = c.get_int("nx");
    const int nt0 = c.get_int("nt");
    const std::string rule = c.get_or("nt_rule", "linear");
    const double r = static_cast<double>(nx - 1) / (nx0 - 1);
    if (rule == "quadratic") return std::max(2, static_cast<int>(std::lround(nt0 * r * r)));
    return std::max(2, static_cast<int>(std::lround(nt0 * r)));
}

nlohmann::ordered_json config_echo(const ExperimentConfig& ec) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1";
    j["command"] = ec.command;
    j["seed"] = ec.seed;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : ec.cfg.items()) cfg[k] = v;
    j["config"] = cfg;
    if (!ec.levels.empty()) j["levels"] = ec.levels;
    return j;
}

std::string finish(const ExperimentConfig& ec, nlohmann::ordered_json& summary) {
    fs::create_directories(ec.out_dir);
    const std::string path = ec.out_dir + "/" + ec.command + "_summary.json";
    write_text_file(path, summary.dump(2) + "\n");
    return path;
}

std::string cmd_norms(const ExperimentConfig& ec) {
    auto dom = domain_from_config(ec.cfg);
    const VariableExponent alpha = exponent_from_config(ec.cfg);
    const GridFunction u = GridFunction::sample(dom, field_from_config(ec.cfg, "field", dom->dim));

    std::vector<std::pair<std::string, HolderReport>> reports;
    reports.emplace_back("norm_0_alpha", norm_0_alpha(u, alpha));
    reports.emplace_back("norm_2_1_alpha", norm_2_1_alpha(u, alpha));
    for (int k = 0; k <= 2; ++k)
        reports.emplace_back("weighted_interior_k" + std::to_string(k),
                             weighted_interior_seminorm(u, alpha, k));
    reports.emplace_back("boundary_initial_slice_k0",
                         boundary_seminorm(u, alpha, 0, BoundaryPortion::initial_slice()));

    fs::create_directories(ec.out_dir);
    std::string csv = holder_report_csv_header() + ",check_id\n";
    for (const auto& [name, rep] : reports)
        csv += holder_report_csv_row(name, rep) + ",holder_norms\n";
    write_text_file(ec.out_dir + "/norms_reports.csv", csv);

    nlohmann::ordered_json summary = config_echo(ec);
    nlohmann::ordered_json jr;
    for (const auto& [name, rep] : reports) jr[name] = to_json(rep);
    summary["reports"] = jr;
    return finish(ec, summary);
}

std::string cmd_kernel_check(const ExperimentConfig& ec) {
    const int n = ec.cfg.get_int_or("dim", 1);
    const KernelSpec spec = KernelSpec::standard(n);

    std::mt19937_64 rng(ec.seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), utau(0.05, 1.0);

    double worst_identity1 = 0.0, worst_identity2 = 0.0;
    for (int i = 0; i < 100; ++i) {
        SpaceTimePoint xt, ys;
        xt.dim = ys.dim = n;
        for (int a = 0; a < n; ++a) {
            xt.x[a] = ux(rng);
            ys.x[a] = ux(rng);
        }
        xt.t = 0.0;
        ys.t = utau(rng);
        double lap_y = 0.0, lap_x = 0.0;
        for (int a = 0; a < n; ++a) {
            SpaceMulti j{};
            j[a] = 2;
            lap_y += eval_kernel_derivative(spec, 0, j, xt, ys);
            lap_x += eval_kernel_derivative_xt(spec, 0, j, xt, ys);
        }
        const double gs = eval_kernel_derivative(spec, 1, SpaceMulti{}, xt, ys);
        const double gt = eval_kernel_derivative_xt(spec, 1, SpaceMulti{}, xt, ys);
        const double scale = std::abs(gs) + std::abs(lap_y) + 1e-300;
        worst_identity1 = std::max(worst_identity1, std::abs(gs - lap_y) / scale);
        worst_identity2 = std::max(worst_identity2, std::abs(gt + lap_x) / scale);
    }

    // derivative bound sweep with a doubling z-grid
    auto samples_for = [&](int density) {
        std::vector<std::pair<SpaceTimePoint, SpaceTimePoint>> s;
        for (int it = 0; it < density; ++it) {
            const double tau = std::pow(10.0, -3.0 + 3.0 * (it + 0.5) / density);
            for (int ir = 0; ir < density; ++ir) {
                const double r = 6.0 * std::sqrt(tau) * (ir + 0.5) / density;
                SpaceTimePoint xt, ys;
                xt.dim = ys.dim = n;
                xt.x[0] = r;
                xt.t = 0.0;
                ys.t = tau;
                s.emplace_back(xt, ys);
            }
        }
        return s;
    };
    const auto coarse = samples_for(40);
    const auto fine = samples_for(80);

    CsvTable table({"check_id", "k", "j", "C_coarse", "C_fine", "growth_pct"});
    nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
    for (int k = 0; k <= 4; ++k) {
        for (int jt = 0; k + jt <= 4; ++jt) {
            SpaceMulti j{};
            j[0] = jt;
            const double c0 = verify_derivative_bound(spec, k, j, coarse).C;
            const double c1 = verify_derivative_bound(spec, k, j, fine).C;
            const double growth = c0 > 0.0 ? 100.0 * (c1 - c0) / c0 : 0.0;
            table.add_row({"derivative_bound", std::to_string(k), std::to_string(jt),
                           fmt_double(c0), fmt_double(c1), fmt_double(growth)});
            nlohmann::ordered_json e;
            e["k"] = k;
            e["j"] = jt;
            e["C"] = c1;
            e["growth_pct"] = growth;
            sweep.push_back(e);
        }
    }
    fs::create_directories(ec.out_dir);
    table.write(ec.out_dir + "/kernel_bound_sweep.csv");

    nlohmann::ordered_json summary = config_echo(ec);
    summary["identity_forward_rel"] = worst_identity1;
    summary["identity_backward_rel"] = worst_identity2;
    summary["bound_sweep"] = sweep;
    return finish(ec, summary);
}

std::string cmd_potential(const ExperimentConfig& ec) {
    const auto levels = levels_or(ec, {33, 65, 129});
    const int n = static_cast<int>(ec.cfg.get_doubles("lower").size());
    const KernelSpec spec = KernelSpec::standard(n);

    CsvTable table({"check_id", "nx", "nt", "sup_residual", "ratio_vs_prev"});
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    double prev = 0.0;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        auto dom = domain_from_config(ec.cfg, levels[li], scaled_nt(ec.cfg, levels[li]));
        GridFunction f = GridFunction::sample(dom, field_from_config(ec.cfg, "f", dom->dim));
        std::vector<SpaceTimePoint> probes;
        for (int i = 0; i < 8; ++i) {
            SpaceTimePoint p;
            p.dim = dom->dim;
            for (int a = 0; a < dom->dim; ++a)
                p.x[a] = dom->lower[a] + (0.3 + 0.05 * i) * (dom->upper[a] - dom->lower[a]);
            p.t = dom->t_begin + (0.35 + 0.05 * i) * dom->T();
            // snap to the time lattice
            p.t = dom->t_begin + std::round((p.t - dom->t_begin) / dom->tau) * dom->tau;
            probes.push_back(p);
        }
        const double res = duhamel_residual(f, spec, probes);
        const double ratio = li > 0 ? prev / res : 0.0;
        table.add_row({"duhamel_residual", std::to_string(levels[li]), std::to_string(dom->nt),
                       fmt_double(res), fmt_double(ratio)});
        nlohmann::ordered_json e;
        e["nx"] = levels[li];
        e["nt"] = dom->nt;
        e["sup_residual"] = res;
        e["ratio_vs_prev"] = ratio;
        rows.push_back(e);
        prev = res;
    }
    fs::create_directories(ec.out_dir);
    table.write(ec.out_dir + "/potential_residuals.csv");

    // full grids at the coarsest level for inspection
    auto dom0 = domain_from_config(ec.cfg, levels.front(), scaled_nt(ec.cfg, levels.front()));
    GridFunction f0 = GridFunction::sample(dom0, field_from_config(ec.cfg, "f", dom0->dim));
    const PotentialResult pr = heat_potential(f0, spec, dom0);
    write_grid_csv(ec.out_dir + "/potential_grid.csv", pr.v, {{"vs", &pr.vs}});

    nlohmann::ordered_json summary = config_echo(ec);
    summary["levels"] = rows;
    summary["quadrature_meta"] = to_json(pr.meta);
    return finish(ec, summary);
}

std::string cmd_solve(const ExperimentConfig& ec) {
    auto dom = domain_from_config(ec.cfg);
    const ParabolicProblem p = problem_from_config(ec.cfg, dom);
    const SolveResult r = fd_solve(p);
    fs::create_directories(ec.out_dir);
    write_grid_csv(ec.out_dir + "/solve_u.csv", r.u);
    nlohmann::ordered_json summary = config_echo(ec);
    summary["steps"] = r.steps;
    summary["factorizations"] = r.factorizations;
    summary["iterations"] = r.iterations;
    summary["residual"] = r.residual;
    summary["compatibility_residual"] = r.compatibility_residual;
    summary["compatibility_warning"] = r.compatibility_warning;
    return finish(ec, summary);
}

std::string cmd_schauder(const ExperimentConfig& ec) {
    const auto levels = levels_or(ec, {9, 17, 33});
    const VariableExponent alpha = exponent_from_config(ec.cfg);

    CsvTable table({"check_id", "nx", "nt", "C_global", "C_interior", "C_boundary"});
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::vector<double> cg;
    for (int nx : levels) {
        auto dom = domain_from_config(ec.cfg, nx, scaled_nt(ec.cfg, nx));
        const ParabolicProblem p = problem_from_config(ec.cfg, dom);
        const SolveResult r = fd_solve(p);
        const SchauderReport rep = schauder_constant(p, r, alpha);
        table.add_row({"global_estimate", std::to_string(nx), std::to_string(dom->nt),
                       fmt_double(rep.C_global), fmt_double(rep.C_interior),
                       fmt_double(rep.C_boundary)});
        nlohmann::ordered_json e;
        e["nx"] = nx;
        e["C_global"] = rep.C_global;
        e["C_interior"] = rep.C_interior;
        e["C_boundary"] = rep.C_boundary;
        for (const auto& [k, v] : rep.breakdown) e[k] = v;
        rows.push_back(e);
        cg.push_back(rep.C_global);
    }
    fs::create_directories(ec.out_dir);
    table.write(ec.out_dir + "/schauder_sweep.csv");

    nlohmann::ordered_json summary = config_echo(ec);
    summary["levels"] = rows;
    if (cg.size() >= 2) {
        const double drift =
            std::abs(cg.back() - cg[cg.size() - 2]) / std::max(cg[cg.size() - 2], 1e-300);
        summary["drift_last_pct"] = 100.0 * drift;
    }
    return finish(ec, summary);
}

std::string cmd_mollify_check(const ExperimentConfig& ec) {
    auto dom = domain_from_config(ec.cfg);
    if (dom->shape != Shape::ball)
        throw std::invalid_argument(
            "mollify-check: needs a ball domain (spatial extension is reflection-based)");
    const VariableExponent alpha = exponent_from_config(ec.cfg);
    const GridFunction f = GridFunction::sample(dom, field_from_config(ec.cfg, "field", dom->dim));
    const double sigma = ec.cfg.get_double_or("sigma", 0.45 * dom->radius);

    const ExtendedField ext = reflect_extension_ball(f, alpha, sigma);

    const double aminus = alpha.alpha_minus();
    CsvTable table({"check_id", "delta", "eps_prime", "eps", "lhs", "rhs", "pass"});
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double frac : {0.25, 0.5}) {
        const double delta = frac * aminus;
        const double eps_prime = mollify_epsilon_threshold(ext, delta);
        const double eps = 0.5 * eps_prime;
        const MollifyBoundReport rep = check_mollify_bound(ext, delta, eps);
        table.add_row({"mollify_bound", fmt_double(delta), fmt_double(eps_prime),
                       fmt_double(eps), fmt_double(rep.lhs), fmt_double(rep.rhs),
                       rep.pass ? "1" : "0"});
        nlohmann::ordered_json e;
        e["delta"] = delta;
        e["eps_prime"] = eps_prime;
        e["eps"] = eps;
        e["lhs"] = rep.lhs;
        e["rhs"] = rep.rhs;
        e["pass"] = rep.pass;
        rows.push_back(e);
    }
    fs::create_directories(ec.out_dir);
    table.write(ec.out_dir + "/mollify_bound.csv");
    nlohmann::ordered_json summary = config_echo(ec);
    summary["extension_norm_ratio"] = ext.norm_ratio;
    summary["cases"] = rows;
    return finish(ec, summary);
}

std::string cmd_interp_check(const ExperimentConfig& ec) {
    const auto levels = levels_or(ec, {9, 17});
    const VariableExponent alpha = exponent_from_config(ec.cfg);
    const double beta_val = ec.cfg.get_double_or("interp_beta", 0.4);
    const VariableExponent beta = VariableExponent::constant(beta_val);
    const int k = ec.cfg.get_int_or("interp_k", 2);
    const int j = ec.cfg.get_int_or("interp_j", 1);
    const std::vector<double> eps_list =
        ec.cfg.has("eps_list") ? ec.cfg.get_doubles("eps_list") : std::vector<double>{0.1, 0.01};

    CsvTable table({"check_id", "nx", "eps", "C_min", "argmax_field"});
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int nx : levels) {
        auto dom = domain_from_config(ec.cfg, nx, scaled_nt(ec.cfg, nx));
        std::vector<std::pair<std::string, GridFunction>> corpus;
        for (const auto& [name, fn] : builtin_corpus(dom->dim, ec.seed))
            corpus.emplace_back(name, GridFunction::sample(dom, fn));
        for (double eps : eps_list) {
            const InterpConstant c = minimal_interp_constant(corpus, alpha, beta, k, j, eps);
            table.add_row({"interpolation", std::to_string(nx), fmt_double(eps), fmt_double(c.C),
                           c.argmax_field});
            nlohmann::ordered_json e;
            e["nx"] = nx;
            e["eps"] = eps;
            e["C_min"] = c.C;
            e["argmax_field"] = c.argmax_field;
            rows.push_back(e);
        }
    }
    fs::create_directories(ec.out_dir);
    table.write(ec.out_dir + "/interp_constants.csv");
    nlohmann::ordered_json summary = config_echo(ec);
    summary["cases"] = rows;
    return finish(ec, summary);
}

std::string cmd_example(const ExperimentConfig& ec) {
    const double gamma = ec.cfg.get_double_or("exp_gamma", 0.5);
    const double zeta = ec.cfg.get_double_or("exp_zeta", 0.4);
    const double beta_probe = ec.cfg.get_double_or("beta_probe", 0.35);
    const int n_max = ec.cfg.get_int_or("n_max", 64);
    const int dim = ec.cfg.get_int_or("dim", 1);
    const auto levels = levels_or(ec, {17, 33, 65});

    const VariableExponent alpha = VariableExponent::power_example(gamma, zeta);
    const QnProbe probe = optimality_probe(gamma, zeta, beta_probe, n_max, dim);

    // (a) variable-exponent seminorm across refinements
    CsvTable semis({"check_id", "nx", "nt", "seminorm"});
    nlohmann::ordered_json sem_rows = nlohmann::ordered_json::array();
    std::vector<double> semi_values;
    for (int nx : levels) {
        auto dom = make_ball_domain(std::vector<double>(dim, 0.0), zeta, zeta, nx,
                                    std::max(2, (nx - 1) / 2));
        GridFunction f = GridFunction::sample(dom, field_power_cusp(gamma, zeta));
        const HolderReport rep = seminorm_var(f, alpha);
        semis.add_row({"optimality_probe", std::to_string(nx), std::to_string(dom->nt),
                       fmt_double(rep.value)});
        nlohmann::ordered_json e;
        e["nx"] = nx;
        e["seminorm"] = rep.value;
        sem_rows.push_back(e);
        semi_values.push_back(rep.value);
    }

    // (b) probe sequence
    CsvTable qn({"check_id", "n", "q_n"});
    for (int n = 1; n <= n_max; ++n)
        qn.add_row({"optimality_probe", std::to_string(n), fmt_double(probe.q[n - 1])});

    // (c) solve + stability constants on the finest level
    auto dom = make_ball_domain(std::vector<double>(dim, 0.0), zeta, zeta, levels.back(),
                                std::max(2, (levels.back() - 1) / 2));
    const ParabolicProblem p = make_heat_problem(dom, field_power_cusp(gamma, zeta), field_zero());
    const SolveResult solved = fd_solve(p);
    const SchauderReport schauder = schauder_constant(p, solved, alpha);

    fs::create_directories(ec.out_dir);
    semis.write(ec.out_dir + "/example_seminorm.csv");
    qn.write(ec.out_dir + "/example_qn.csv");
    if (ec.plots) {
        std::vector<double> xs(n_max);
        for (int i = 0; i < n_max; ++i) xs[i] = i + 1;
        write_svg_curve(ec.out_dir + "/example_qn.svg", xs, probe.q, "optimality probe q_n",
                        true);
    }

    nlohmann::ordered_json summary = config_echo(ec);
    summary["seminorm_levels"] = sem_rows;
    summary["qn_ratio_last_first"] = probe.ratio_last_first;
    summary["qn_eventually_increasing"] = probe.eventually_increasing;
    summary["schauder_C_global"] = schauder.C_global;
    summary["solver_residual"] = solved.residual;
    return finish(ec, summary);
}

} // namespace

std::string run_command(const ExperimentConfig& ec) {
    if (ec.command == "norms") return cmd_norms(ec);
    if (ec.command == "kernel-check") return cmd_kernel_check(ec);
    if (ec.command == "potential") return cmd_potential(ec);
    if (ec.command == "solve") return cmd_solve(ec);
    if (ec.command == "schauder") return cmd_schauder(ec);
    if (ec.command == "mollify-check") return cmd_mollify_check(ec);
    if (ec.command == "interp-check") return cmd_interp_check(ec);
    if (ec.command == "example") return cmd_example(ec);
    throw std::invalid_argument("run_command: unknown command '" + ec.command + "'");
}

} // namespace holdervar
