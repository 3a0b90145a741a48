#include "holdervar/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "holdervar/parallel.hpp"

namespace holdervar {

namespace {

void check_source_domain(const GridFunction& f, const KernelSpec& spec) {
    const GridDomain& d = f.dom();
    if (d.shape != Shape::box)
        throw std::invalid_argument("heat_potential: source domain must be a box");
    if (d.dim != spec.dim)
        throw std::invalid_argument("heat_potential: kernel/source dimension mismatch");
    if (std::abs(d.t_begin) > 1e-15)
        throw std::invalid_argument("heat_potential: source domain must start at t = 0");
}

// f must vanish on every lateral fence except the high fence of the last
// axis, and on the initial slice.
void check_support(const GridFunction& f) {
    const GridDomain& d = f.dom();
    for (int k = 0; k <= d.nt; ++k) {
        for (int s : d.spatial_nodes()) {
            const int id = d.node_id(s, k);
            if (f.at(id) == 0.0) continue;
            if (k == 0)
                throw std::runtime_error(
                    "heat_potential: source support touches the initial slice");
            const auto ix = d.spatial_indices(s);
            for (int a = 0; a < d.dim; ++a) {
                const bool low = ix[a] == 0;
                const bool high = ix[a] == d.nx - 1;
                const bool high_allowed = (a == d.dim - 1);
                if (low || (high && !high_allowed))
                    throw std::runtime_error(
                        "heat_potential: source support touches a forbidden fence");
            }
        }
    }
}

// nonzero spatial entries per time level, with tensor-trapezoid weights
struct LevelSource {
    std::vector<int> snode;
    std::vector<double> wf; // weight * f
};

// centered second differences of the source at the evaluation point; the
// zeroth moment of the vs cutoff layer is eps_t * Lap f(y,s)
double source_laplacian(const GridFunction& f, const SpaceTimePoint& yp) {
    const GridDomain& d = f.dom();
    double lap = 0.0;
    const double fc = f.eval(yp);
    for (int a = 0; a < d.dim; ++a) {
        SpaceTimePoint pm = yp, pp = yp;
        pm.x[a] -= d.h;
        pp.x[a] += d.h;
        lap += (f.eval(pp) - 2.0 * fc + f.eval(pm)) / (d.h * d.h);
    }
    return lap;
}

std::vector<LevelSource> gather_sources(const GridFunction& f) {
    const GridDomain& d = f.dom();
    std::vector<double> wspatial(d.spatial_count(), 0.0);
    const double cell = std::pow(d.h, d.dim);
    for (int s : d.spatial_nodes()) {
        const auto ix = d.spatial_indices(s);
        double w = cell;
        for (int a = 0; a < d.dim; ++a)
            if (ix[a] == 0 || ix[a] == d.nx - 1) w *= 0.5;
        wspatial[s] = w;
    }
    std::vector<LevelSource> lv(d.nt + 1);
    for (int k = 0; k <= d.nt; ++k) {
        for (int s : d.spatial_nodes()) {
            const double v = f.at(d.node_id(s, k));
            if (v == 0.0) continue;
            lv[k].snode.push_back(s);
            lv[k].wf.push_back(wspatial[s] * v);
        }
    }
    return lv;
}

} // namespace

PotentialValues heat_potential_at(const GridFunction& f, const KernelSpec& spec,
                                  std::span<const SpaceTimePoint> eval_pts,
                                  const PotentialOptions& opts) {
    check_source_domain(f, spec);
    if (opts.with_vs && opts.check_support) check_support(f);

    const GridDomain& d = f.dom();
    const double tau = d.tau;
    const double eps_t = tau;
    const auto sources = gather_sources(f);

    const KernelDerivativeEval ks(spec, 1, SpaceMulti{});

    PotentialValues out;
    out.meta = {eps_t, "tensor-trapezoid", d.nx, d.nt + 1};
    out.v.resize(eval_pts.size(), 0.0);
    if (opts.with_vs) out.vs.resize(eval_pts.size(), 0.0);

    for (const SpaceTimePoint& yp : eval_pts)
        if (!(yp.t > 0.0))
            throw std::invalid_argument("heat_potential: evaluation time must be positive");

    // evaluation points are independent; each worker writes its own slots
    parallel_for(static_cast<int>(eval_pts.size()), [&](int e) {
        const SpaceTimePoint& yp = eval_pts[e];

        // levels t_k <= s - eps_t, trapezoid weights, plus a partial
        // rectangle when s - eps_t falls between levels
        const double t_hi = yp.t - eps_t;
        const int m = std::min(d.nt, static_cast<int>(std::floor(t_hi / tau + 1e-9)));
        const double rem = t_hi - m * tau;

        double v_acc = 0.0, vs_acc = 0.0;
        for (int k = 0; k <= m; ++k) {
            if (sources[k].snode.empty()) continue;
            // composite trapezoid over [t_0, t_m]; degenerates to nothing for
            // a single retained level
            double wt = m >= 1 ? ((k == 0 || k == m) ? 0.5 * tau : tau) : 0.0;
            if (k == m && rem > 1e-12 * tau) wt += rem;
            if (wt == 0.0) continue;
            const double tk = d.time_of_level(k);
            double iv = 0.0, ivs = 0.0;
            const auto& src = sources[k];
            for (std::size_t ii = 0; ii < src.snode.size(); ++ii) {
                const SpaceTimePoint xp = d.spatial_point(src.snode[ii], tk);
                iv += src.wf[ii] * eval_kernel(spec, xp, yp);
                if (opts.with_vs) ivs += src.wf[ii] * ks.value(xp, yp);
            }
            v_acc += wt * iv;
            if (opts.with_vs) vs_acc += wt * ivs;
        }
        // zeroth-moment corrections over the cutoff layer: the kernel's
        // spatial integral is ~1 there, so the layer contributes f(y,s)*eps_t
        // to v and Lap f(y,s)*eps_t to the vs integral
        const double fys = f.eval(yp);
        out.v[e] = v_acc + fys * eps_t;
        if (opts.with_vs) out.vs[e] = fys + vs_acc + source_laplacian(f, yp) * eps_t;
    });
    return out;
}

PotentialResult heat_potential(const GridFunction& f, const KernelSpec& spec,
                               std::shared_ptr<const GridDomain> eval_dom,
                               const PotentialOptions& opts) {
    check_source_domain(f, spec);
    if (opts.with_vs && opts.check_support) check_support(f);

    const GridDomain& ed = *eval_dom;
    std::vector<SpaceTimePoint> pts;
    std::vector<int> ids;
    for (int id : ed.cylinder_nodes()) {
        if (ed.level_of(id) == 0) continue; // handled by the Duhamel limit
        pts.push_back(ed.node_point(id));
        ids.push_back(id);
    }
    PotentialOptions inner = opts;
    inner.check_support = false; // already checked above
    const PotentialValues vals = heat_potential_at(f, spec, pts, inner);

    std::vector<double> v(ed.node_count(), 0.0);
    std::vector<double> vs(ed.node_count(), 0.0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        v[ids[i]] = vals.v[i];
        if (opts.with_vs) vs[ids[i]] = vals.vs[i];
    }
    // initial slice: v = 0, vs = f
    for (int id : ed.cylinder_nodes()) {
        if (ed.level_of(id) != 0) continue;
        if (opts.with_vs) vs[id] = f.eval(ed.node_point(id));
    }

    PotentialResult res{GridFunction::from_values(eval_dom, std::move(v)),
                        opts.with_vs ? GridFunction::from_values(eval_dom, std::move(vs))
                                     : GridFunction(),
                        vals.meta};
    return res;
}

VsBoundReport vs_holder_bound(const GridFunction& f, const VariableExponent& alpha,
                              std::span<const std::pair<SpaceTimePoint, SpaceTimePoint>> pairs,
                              const KernelSpec& spec, const PotentialOptions& opts) {
    // vs at the pair endpoints
    std::vector<SpaceTimePoint> pts;
    pts.reserve(2 * pairs.size());
    for (const auto& pr : pairs) {
        pts.push_back(pr.first);
        pts.push_back(pr.second);
    }
    PotentialOptions po = opts;
    po.with_vs = true;
    const PotentialValues vals = heat_potential_at(f, spec, pts, po);

    // pointed seminorms of f, cached per distinct point
    std::map<std::array<double, kMaxDim + 1>, double> cache;
    auto pointed = [&](const SpaceTimePoint& p) {
        std::array<double, kMaxDim + 1> key{};
        for (int a = 0; a < p.dim; ++a) key[a] = p.x[a];
        key[kMaxDim] = p.t;
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double v = pointed_seminorm(f, alpha, p);
        cache.emplace(key, v);
        return v;
    };

    VsBoundReport rep;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [P1, P2] = pairs[i];
        const double dist = parabolic_distance(P1, P2);
        if (dist == 0.0) continue;
        const double quot = std::abs(vals.vs[2 * i] - vals.vs[2 * i + 1]) /
                            std::pow(dist, alpha(P1));
        SpaceTimePoint m12 = P1, m21 = P2;
        m12.t = P2.t;
        m21.t = P1.t;
        const double denom = pointed(P1) + pointed(P2) + pointed(m12) + pointed(m21);
        if (denom == 0.0) {
            if (quot > 1e-12)
                throw std::runtime_error(
                    "vs_holder_bound: zero seminorm sum with nonzero quotient");
            continue;
        }
        rep.vacuous = false;
        const double c = quot / denom;
        if (c > rep.C) {
            rep.C = c;
            rep.argmax = static_cast<int>(i);
            rep.worst_quotient = quot;
            rep.worst_denominator = denom;
        }
    }
    return rep;
}

} // namespace holdervar
