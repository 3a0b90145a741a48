#include "holdervar/regularize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "holdervar/parallel.hpp"

namespace holdervar {

namespace {

int time_pad_steps(const GridDomain& d, double sigma) {
    return std::max(1, static_cast<int>(std::ceil(sigma * sigma / d.tau - 1e-12)));
}

// |g|_{0,alpha} on a deterministic node subsample (stride-thinned to at most
// 1500 nodes), so extension factories stay cheap on large grids
double sampled_norm_0_alpha(const GridFunction& g, const VariableExponent& alpha) {
    const GridDomain& d = g.dom();
    std::vector<int> nodes = d.cylinder_nodes();
    if (nodes.size() > 1500) {
        const std::size_t stride = nodes.size() / 1500 + 1;
        std::vector<int> sub;
        for (std::size_t i = 0; i < nodes.size(); i += stride) sub.push_back(nodes[i]);
        nodes = std::move(sub);
    }
    const int n = static_cast<int>(nodes.size());
    std::vector<SpaceTimePoint> pts(n);
    std::vector<double> av(n);
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        pts[i] = d.node_point(nodes[i]);
        av[i] = alpha(pts[i]);
        sup = std::max(sup, std::abs(g.at(nodes[i])));
    }
    double semi = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dist = parabolic_distance(pts[i], pts[j]);
            semi = std::max(semi,
                            std::abs(g.at(nodes[i]) - g.at(nodes[j])) / std::pow(dist, av[j]));
        }
    }
    return sup + semi;
}

double compute_norm_ratio(const GridFunction& fbar, const VariableExponent& abar,
                          const GridFunction& f, const VariableExponent& a) {
    const double ext_norm = sampled_norm_0_alpha(fbar, abar);
    const double base_norm = sampled_norm_0_alpha(f, a);
    return base_norm > 0.0 ? ext_norm / base_norm : (ext_norm > 0.0 ? INFINITY : 1.0);
}

} // namespace

ExtendedField extend_time(const GridFunction& f, const VariableExponent& alpha, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("extend_time: sigma must be positive");
    const auto base = f.dom_ptr();
    const GridDomain& d = *base;
    const int mt = time_pad_steps(d, sigma);

    GridDomainSpec spec;
    spec.shape = d.shape;
    spec.dim = d.dim;
    spec.lower = d.lower;
    spec.upper = d.upper;
    spec.center = d.center;
    spec.radius = d.radius;
    spec.t_begin = d.t_begin - mt * d.tau;
    spec.t_end = d.t_end + mt * d.tau;
    spec.nx = d.nx;
    spec.nt = d.nt + 2 * mt;
    auto ext_dom = make_domain(spec);

    std::vector<double> vals(ext_dom->node_count(), 0.0);
    for (int k = 0; k <= ext_dom->nt; ++k) {
        const int k_base = std::clamp(k - mt, 0, d.nt);
        for (int s : ext_dom->spatial_nodes())
            vals[ext_dom->node_id(s, k)] = f.at(d.node_id(s, k_base));
    }
    GridFunction fbar = GridFunction::from_values(ext_dom, std::move(vals));

    const GridDomain& bd = d;
    VariableExponent abar = VariableExponent::from_closure(
        [alpha, &bd = *base, lo = d.t_begin, hi = d.t_end](const SpaceTimePoint& p) {
            SpaceTimePoint q = p;
            q.t = std::clamp(p.t, lo, hi);
            return alpha(q);
        },
        alpha.alpha_plus(), alpha.alpha_minus());
    (void)bd;

    ExtendedField ext{std::move(fbar), std::move(abar), sigma, base, 0.0};
    ext.norm_ratio = compute_norm_ratio(ext.f_bar, ext.alpha_bar, f, alpha);
    return ext;
}

ExtendedField reflect_extension_ball(const GridFunction& f, const VariableExponent& alpha,
                                     double sigma) {
    const auto base = f.dom_ptr();
    const GridDomain& d = *base;
    if (d.shape != Shape::ball)
        throw std::invalid_argument("reflect_extension_ball: requires a ball domain");
    if (!(sigma > 0.0) || sigma + d.h >= d.radius)
        throw std::invalid_argument("reflect_extension_ball: need 0 < sigma < radius - h");

    const int mt = time_pad_steps(d, sigma);
    const int pc = static_cast<int>(std::ceil(sigma / d.h - 1e-12));

    GridDomainSpec spec;
    spec.shape = Shape::ball;
    spec.dim = d.dim;
    spec.center = d.center;
    spec.radius = d.radius + sigma;
    for (int a = 0; a < d.dim; ++a) {
        spec.lower[a] = d.lower[a] - pc * d.h;
        spec.upper[a] = d.upper[a] + pc * d.h;
    }
    spec.t_begin = d.t_begin - mt * d.tau;
    spec.t_end = d.t_end + mt * d.tau;
    spec.nx = d.nx + 2 * pc;
    spec.nt = d.nt + 2 * mt;
    auto ext_dom = make_domain(spec);

    // reflect only beyond the original stair-step collar, so the restriction
    // to the original grid is an exact copy
    const double r_keep = d.radius + d.h;

    auto reflect = [&](const SpaceTimePoint& p) {
        SpaceTimePoint q = p;
        double r2 = 0.0;
        for (int a = 0; a < d.dim; ++a) {
            const double dx = p.x[a] - d.center[a];
            r2 += dx * dx;
        }
        const double r = std::sqrt(r2);
        if (r > d.radius && r > 0.0) {
            const double rstar = 2.0 * d.radius - r;
            for (int a = 0; a < d.dim; ++a)
                q.x[a] = d.center[a] + (rstar / r) * (p.x[a] - d.center[a]);
        }
        return q;
    };

    std::vector<double> vals(ext_dom->node_count(), 0.0);
    for (int k = 0; k <= ext_dom->nt; ++k) {
        const int k_base = std::clamp(k - mt, 0, d.nt);
        const double t_base = d.time_of_level(k_base);
        for (int s : ext_dom->spatial_nodes()) {
            const SpaceTimePoint p = ext_dom->spatial_point(s, t_base);
            double r2 = 0.0;
            for (int a = 0; a < d.dim; ++a) {
                const double dx = p.x[a] - d.center[a];
                r2 += dx * dx;
            }
            const double r = std::sqrt(r2);
            double v;
            auto ix = ext_dom->spatial_indices(s);
            bool shared = r <= r_keep;
            for (int a = 0; a < d.dim && shared; ++a) {
                ix[a] -= pc;
                // collar nodes outside the original bounding box are not
                // original nodes even when r is small enough
                shared = ix[a] >= 0 && ix[a] < d.nx;
            }
            if (shared) shared = d.spatial_in_domain(d.spatial_id(ix));
            if (shared) {
                // shared node: exact copy through the original grid indices
                v = f.at(d.node_id(d.spatial_id(ix), k_base));
            } else {
                v = f.eval(reflect(p));
            }
            vals[ext_dom->node_id(s, k)] = v;
        }
    }
    GridFunction fbar = GridFunction::from_values(ext_dom, std::move(vals));

    VariableExponent abar = VariableExponent::from_closure(
        [alpha, reflect, r_keep, c = d.center, dim = d.dim, lo = d.t_begin,
         hi = d.t_end](const SpaceTimePoint& p) {
            SpaceTimePoint q = p;
            q.t = std::clamp(p.t, lo, hi);
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                const double dx = p.x[a] - c[a];
                r2 += dx * dx;
            }
            if (std::sqrt(r2) > r_keep) q = reflect(q);
            return alpha(q);
        },
        alpha.alpha_plus(), alpha.alpha_minus());

    ExtendedField ext{std::move(fbar), std::move(abar), sigma, base, 0.0};
    ext.norm_ratio = compute_norm_ratio(ext.f_bar, ext.alpha_bar, f, alpha);
    return ext;
}

namespace {

struct MollifyStencil {
    std::vector<std::array<int, kMaxDim>> doff;
    std::vector<int> dlevel;
    std::vector<double> w;
    double wsum = 0.0;
};

MollifyStencil build_stencil(const GridDomain& d, double eps) {
    MollifyStencil st;
    const int rx = static_cast<int>(std::floor(eps / d.h));
    const int rt = static_cast<int>(std::floor(eps / d.tau));
    std::array<int, kMaxDim> off{};
    auto visit = [&](auto&& self, int axis) -> void {
        if (axis == d.dim) {
            double sx2 = 0.0;
            for (int a = 0; a < d.dim; ++a) sx2 += (off[a] * d.h) * (off[a] * d.h);
            for (int dk = -rt; dk <= rt; ++dk) {
                const double z2 = (sx2 + (dk * d.tau) * (dk * d.tau)) / (eps * eps);
                if (z2 >= 1.0) continue;
                const double w = std::exp(-1.0 / (1.0 - z2));
                st.doff.push_back(off);
                st.dlevel.push_back(dk);
                st.w.push_back(w);
                st.wsum += w;
            }
            return;
        }
        for (int o = -rx; o <= rx; ++o) {
            off[axis] = o;
            self(self, axis + 1);
        }
    };
    visit(visit, 0);
    return st;
}

} // namespace

GridFunction mollify(const ExtendedField& ext, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
    if (eps > ext.sigma)
        throw std::invalid_argument("mollify: eps must not exceed the extension margin sigma");

    const GridDomain& bd = *ext.base_dom;
    const GridDomain& ed = ext.f_bar.dom();
    const int pc = static_cast<int>(std::lround((bd.lower[0] - ed.lower[0]) / bd.h));
    const int mt = static_cast<int>(std::lround((bd.t_begin - ed.t_begin) / bd.tau));

    const MollifyStencil st = build_stencil(bd, eps);

    std::vector<double> out(bd.node_count(), 0.0);
    std::atomic<bool> out_of_range{false};
    parallel_for(bd.nt + 1, [&](int k) {
        for (int s : bd.spatial_nodes()) {
            auto ix = bd.spatial_indices(s);
            for (int a = 0; a < bd.dim; ++a) ix[a] += pc;
            const int ke = k + mt;
            const int se_center = ed.spatial_id(ix);
            const int center_id = ed.node_id(se_center, ke);
            if (!ed.in_domain(center_id)) {
                out_of_range = true;
                return;
            }
            const double fc = ext.f_bar.at(center_id);

            // accumulate against the centered value so constants are exact
            double acc = 0.0;
            for (std::size_t m = 0; m < st.w.size(); ++m) {
                auto jx = ix;
                for (int a = 0; a < bd.dim; ++a) jx[a] += st.doff[m][a];
                const int lvl = ke + st.dlevel[m];
                bool ok = lvl >= 0 && lvl <= ed.nt;
                for (int a = 0; a < bd.dim && ok; ++a)
                    ok = jx[a] >= 0 && jx[a] < ed.nx;
                int nb = -1;
                if (ok) {
                    nb = ed.node_id(ed.spatial_id(jx), lvl);
                    ok = ed.in_domain(nb);
                }
                if (!ok) {
                    out_of_range = true;
                    return;
                }
                acc += st.w[m] * (ext.f_bar.at(nb) - fc);
            }
            out[bd.node_id(s, k)] = acc / st.wsum + fc;
        }
    });
    if (out_of_range)
        throw std::invalid_argument(
            "mollify: stencil leaves the extended domain (eps too large)");
    return GridFunction::from_values(ext.base_dom, std::move(out));
}

double uniform_continuity_radius(const VariableExponent& alpha, const GridDomain& dom,
                                 double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("uniform_continuity_radius: delta > 0");
    std::vector<int> nodes = dom.cylinder_nodes();
    if (nodes.size() > 1500) {
        // deterministic stride subsample
        const std::size_t stride = nodes.size() / 1500 + 1;
        std::vector<int> sub;
        for (std::size_t i = 0; i < nodes.size(); i += stride) sub.push_back(nodes[i]);
        nodes = std::move(sub);
    }
    const int n = static_cast<int>(nodes.size());
    std::vector<SpaceTimePoint> pts(n);
    std::vector<double> av(n);
    for (int i = 0; i < n; ++i) {
        pts[i] = dom.node_point(nodes[i]);
        av[i] = alpha(pts[i]);
    }

    std::vector<std::pair<double, double>> pairs; // (euclid space-time dist, |dalpha|)
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s2 = (pts[i].t - pts[j].t) * (pts[i].t - pts[j].t);
            for (int a = 0; a < dom.dim; ++a) {
                const double dx = pts[i].x[a] - pts[j].x[a];
                s2 += dx * dx;
            }
            pairs.emplace_back(std::sqrt(s2), std::abs(av[i] - av[j]));
        }
    }
    std::sort(pairs.begin(), pairs.end());

    double radius = pairs.empty() ? 0.0 : pairs.front().first;
    for (const auto& [dist, da] : pairs) {
        if (da >= delta) break;
        radius = dist;
    }
    return 0.5 * radius;
}

double mollify_epsilon_threshold(const ExtendedField& ext, double delta) {
    const GridDomain& ed = ext.f_bar.dom();
    const GridDomain& bd = *ext.base_dom;
    const double time_margin = bd.t_begin - ed.t_begin;
    const double r = uniform_continuity_radius(ext.alpha_bar, ed, delta);
    return std::min({r, ext.sigma, time_margin});
}

MollifyBoundReport check_mollify_bound(const ExtendedField& ext, double delta, double eps) {
    const double aminus = ext.alpha_bar.alpha_minus();
    if (!(delta > 0.0 && delta < aminus))
        throw std::invalid_argument("check_mollify_bound: need 0 < delta < alpha_minus");

    MollifyBoundReport rep;
    rep.delta = delta;
    rep.eps = eps;
    rep.eps_prime = mollify_epsilon_threshold(ext, delta);
    rep.hypothesis_met = eps <= rep.eps_prime;

    const GridFunction feps = mollify(ext, eps);
    // restriction of alpha_bar to the base domain equals alpha there
    rep.lhs = norm_0_alpha(feps, ext.alpha_bar.shifted(delta)).value;
    rep.rhs = 3.0 * norm_0_alpha(ext.f_bar, ext.alpha_bar).value;
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace holdervar
