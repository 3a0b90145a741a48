#include "holdervar/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "holdervar/parallel.hpp"

namespace holdervar {

namespace {

int g_threads = 0; // 0 = hardware

int effective_threads() {
    if (g_threads > 0) return g_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int pair_scan_threads() { return effective_threads(); }
void set_pair_scan_threads(int n) { g_threads = n; }

void parallel_for(int n, const std::function<void(int)>& body) {
    const int threads = std::min(effective_threads(), std::max(1, n / 16));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction GridFunction::sample(std::shared_ptr<const GridDomain> dom,
                                  std::function<double(const SpaceTimePoint&)> fn) {
    GridFunction g;
    g.dom_ = std::move(dom);
    g.fn_ = std::move(fn);
    g.values_.assign(g.dom_->node_count(), 0.0);
    for (int id : g.dom_->cylinder_nodes()) {
        const double v = g.fn_(g.dom_->node_point(id));
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: non-finite value at an in-domain node");
        g.values_[id] = v;
    }
    return g;
}

GridFunction GridFunction::from_values(std::shared_ptr<const GridDomain> dom,
                                       std::vector<double> values) {
    GridFunction g;
    g.dom_ = std::move(dom);
    if (values.size() != static_cast<std::size_t>(g.dom_->node_count()))
        throw std::invalid_argument("GridFunction: value count does not match the grid");
    g.values_ = std::move(values);
    for (int id : g.dom_->cylinder_nodes())
        if (!std::isfinite(g.values_[id]))
            throw std::invalid_argument("GridFunction: non-finite value at an in-domain node");
    return g;
}

double GridFunction::eval(const SpaceTimePoint& p) const {
    if (fn_) return fn_(p);
    const GridDomain& d = *dom_;
    // exact node hit
    std::array<int, kMaxDim> ix{};
    bool on_node = true;
    for (int a = 0; a < d.dim; ++a) {
        const double u = (p.x[a] - d.lower[a]) / d.h;
        const int i = static_cast<int>(std::lround(u));
        if (std::abs(u - i) > 1e-9 || i < 0 || i >= d.nx) on_node = false;
        ix[a] = std::clamp(i, 0, d.nx - 1);
    }
    const double ut = (p.t - d.t_begin) / d.tau;
    const int lvl = static_cast<int>(std::lround(ut));
    if (on_node && std::abs(ut - lvl) <= 1e-9 && lvl >= 0 && lvl <= d.nt)
        return values_[d.node_id(d.spatial_id(ix), lvl)];

    // multilinear interpolation over the space-time cell
    std::array<int, kMaxDim> i0{};
    std::array<double, kMaxDim> w{};
    for (int a = 0; a < d.dim; ++a) {
        double u = (p.x[a] - d.lower[a]) / d.h;
        u = std::clamp(u, 0.0, static_cast<double>(d.nx - 1));
        i0[a] = std::min(static_cast<int>(u), d.nx - 2);
        w[a] = u - i0[a];
    }
    double tv = std::clamp(ut, 0.0, static_cast<double>(d.nt));
    const int k0 = std::min(static_cast<int>(tv), d.nt - 1);
    const double wt = tv - k0;

    double acc = 0.0;
    const int corners = 1 << d.dim;
    for (int kc = 0; kc < 2; ++kc) {
        for (int c = 0; c < corners; ++c) {
            double weight = (kc == 0 ? 1.0 - wt : wt);
            std::array<int, kMaxDim> ix2 = i0;
            for (int a = 0; a < d.dim; ++a) {
                const bool hi = (c >> a) & 1;
                weight *= hi ? w[a] : 1.0 - w[a];
                ix2[a] = i0[a] + (hi ? 1 : 0);
            }
            acc += weight * values_[d.node_id(d.spatial_id(ix2), k0 + kc)];
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Finite differences

namespace {

// Per-axis neighbor lookup on the spatial tensor grid; -1 when the offset
// leaves the grid or the domain mask.
int spatial_neighbor(const GridDomain& d, int snode, int axis, int off) {
    auto ix = d.spatial_indices(snode);
    ix[axis] += off;
    if (ix[axis] < 0 || ix[axis] >= d.nx) return -1;
    const int s = d.spatial_id(ix);
    return d.spatial_in_domain(s) ? s : -1;
}

struct Stencil {
    int noffsets = 0;
    std::array<int, 4> off{};
    std::array<double, 4> w{}; // divided by the spacing power already
};

bool fits(const GridDomain& d, int snode, int axis, std::initializer_list<int> offs) {
    for (int o : offs)
        if (o != 0 && spatial_neighbor(d, snode, axis, o) < 0) return false;
    return true;
}

// First-derivative stencil along a spatial axis, second order where the grid
// allows, short fallbacks only on degenerate stair-step rows.
Stencil d1_stencil(const GridDomain& d, int snode, int axis) {
    const double h = d.h;
    if (fits(d, snode, axis, {-1, 1}))
        return {2, {-1, 1}, {-0.5 / h, 0.5 / h}};
    if (fits(d, snode, axis, {1, 2}))
        return {3, {0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}};
    if (fits(d, snode, axis, {-1, -2}))
        return {3, {0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}};
    if (fits(d, snode, axis, {1})) return {2, {0, 1}, {-1.0 / h, 1.0 / h}};
    if (fits(d, snode, axis, {-1})) return {2, {0, -1}, {1.0 / h, -1.0 / h}};
    throw std::invalid_argument("finite_differences: grid too small along an axis");
}

Stencil d2_stencil(const GridDomain& d, int snode, int axis) {
    const double h2 = d.h * d.h;
    if (fits(d, snode, axis, {-1, 1}))
        return {3, {-1, 0, 1}, {1.0 / h2, -2.0 / h2, 1.0 / h2}};
    if (fits(d, snode, axis, {1, 2, 3}))
        return {4, {0, 1, 2, 3}, {2.0 / h2, -5.0 / h2, 4.0 / h2, -1.0 / h2}};
    if (fits(d, snode, axis, {-1, -2, -3}))
        return {4, {0, -1, -2, -3}, {2.0 / h2, -5.0 / h2, 4.0 / h2, -1.0 / h2}};
    // shifted 3-point rule, exact on quadratics
    if (fits(d, snode, axis, {1, 2}))
        return {3, {0, 1, 2}, {1.0 / h2, -2.0 / h2, 1.0 / h2}};
    if (fits(d, snode, axis, {-1, -2}))
        return {3, {0, -1, -2}, {1.0 / h2, -2.0 / h2, 1.0 / h2}};
    throw std::invalid_argument("finite_differences: grid too small along an axis");
}

double apply_spatial(const GridDomain& d, std::span<const double> v, int snode, int level,
                     int axis, const Stencil& st) {
    double acc = 0.0;
    for (int m = 0; m < st.noffsets; ++m) {
        const int s = st.off[m] == 0 ? snode : spatial_neighbor(d, snode, axis, st.off[m]);
        acc += st.w[m] * v[d.node_id(s, level)];
    }
    return acc;
}

// Time stencils: central inside, one-sided second order at the ends.
double time_derivative(const GridDomain& d, std::span<const double> v, int snode, int level) {
    const double tau = d.tau;
    auto at = [&](int k) { return v[d.node_id(snode, k)]; };
    if (level > 0 && level < d.nt) return (at(level + 1) - at(level - 1)) / (2.0 * tau);
    if (level == 0) {
        if (d.nt >= 2) return (-1.5 * at(0) + 2.0 * at(1) - 0.5 * at(2)) / tau;
        return (at(1) - at(0)) / tau;
    }
    if (d.nt >= 2)
        return (1.5 * at(d.nt) - 2.0 * at(d.nt - 1) + 0.5 * at(d.nt - 2)) / tau;
    return (at(d.nt) - at(d.nt - 1)) / tau;
}

} // namespace

DerivativeBundle finite_differences(const GridFunction& u) {
    const GridDomain& d = u.dom();
    if (d.nx < 3 || d.nt + 1 < 3)
        throw std::invalid_argument(
            "finite_differences: need at least 3 nodes per axis and 3 time levels");

    DerivativeBundle b;
    b.dim = d.dim;
    const int total = d.node_count();
    b.grad.assign(static_cast<std::size_t>(total) * d.dim, 0.0);
    b.hess.assign(static_cast<std::size_t>(total) * d.dim * d.dim, 0.0);
    b.ut.assign(total, 0.0);

    const auto v = u.values();

    // first derivatives and pure second derivatives
    for (int k = 0; k <= d.nt; ++k) {
        for (int s : d.spatial_nodes()) {
            const int id = d.node_id(s, k);
            for (int a = 0; a < d.dim; ++a) {
                b.grad[static_cast<std::size_t>(id) * d.dim + a] =
                    apply_spatial(d, v, s, k, a, d1_stencil(d, s, a));
                b.hess[(static_cast<std::size_t>(id) * d.dim + a) * d.dim + a] =
                    apply_spatial(d, v, s, k, a, d2_stencil(d, s, a));
            }
            b.ut[id] = time_derivative(d, v, s, k);
        }
    }

    // mixed second derivatives: derivative of the gradient field
    for (int a = 0; a < d.dim; ++a) {
        for (int bx = a + 1; bx < d.dim; ++bx) {
            std::vector<double> ga(total, 0.0);
            for (int k = 0; k <= d.nt; ++k)
                for (int s : d.spatial_nodes())
                    ga[d.node_id(s, k)] =
                        b.grad[static_cast<std::size_t>(d.node_id(s, k)) * d.dim + bx];
            for (int k = 0; k <= d.nt; ++k) {
                for (int s : d.spatial_nodes()) {
                    const int id = d.node_id(s, k);
                    const double m = apply_spatial(d, ga, s, k, a, d1_stencil(d, s, a));
                    b.hess[(static_cast<std::size_t>(id) * d.dim + a) * d.dim + bx] = m;
                    b.hess[(static_cast<std::size_t>(id) * d.dim + bx) * d.dim + a] = m;
                }
            }
        }
    }
    return b;
}

std::vector<double> apply_first_derivative(const GridDomain& dom, std::span<const double> values,
                                           int axis) {
    std::vector<double> out(dom.node_count(), 0.0);
    for (int k = 0; k <= dom.nt; ++k) {
        for (int s : dom.spatial_nodes()) {
            const int id = dom.node_id(s, k);
            if (axis < 0)
                out[id] = time_derivative(dom, values, s, k);
            else
                out[id] = apply_spatial(dom, values, s, k, axis, d1_stencil(dom, s, axis));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pair scans

double HolderReport::term(const std::string& name) const {
    for (const auto& [k, v] : breakdown)
        if (k == name) return v;
    throw std::out_of_range("HolderReport: no breakdown term named " + name);
}

namespace {

struct BestEntry {
    double value = 0.0;
    int p = -1, q = -1;

    // Strictly larger value wins; ties keep the lexicographically smallest
    // ordered index pair, so the result is independent of scan order.
    void consider(double v, int i, int j) {
        if (!std::isfinite(v)) return;
        if (p < 0 || v > value) {
            value = v;
            p = i;
            q = j;
        } else if (v == value && (i < p || (i == p && j < q))) {
            p = i;
            q = j;
        }
    }

    void merge(const BestEntry& o) {
        if (o.p < 0) return;
        consider(o.value, o.p, o.q);
    }
};

// Scan all unordered node pairs; fn(i, j, qij, qji) fills both orientations.
template <class PairFn>
BestEntry scan_pairs(int n, const PairFn& fn) {
    const int threads = std::min(effective_threads(), std::max(1, n / 64));
    auto run = [&](int t, int stride) {
        BestEntry best;
        for (int i = t; i < n; i += stride) {
            for (int j = i + 1; j < n; ++j) {
                double qij = 0.0, qji = 0.0;
                fn(i, j, qij, qji);
                best.consider(qij, i, j);
                best.consider(qji, j, i);
            }
        }
        return best;
    };
    if (threads <= 1) return run(0, 1);

    std::vector<BestEntry> partial(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] { partial[t] = run(t, threads); });
    for (auto& th : pool) th.join();
    BestEntry best;
    for (const auto& e : partial) best.merge(e);
    return best;
}

struct ScanData {
    const GridDomain* dom = nullptr;
    std::vector<int> nodes;
    std::vector<SpaceTimePoint> pts;
    std::vector<double> alpha; // may be empty
    std::vector<double> wdist; // may be empty
    std::vector<double> qty;   // m components per scan index
    int m = 1;
};

ScanData gather(const GridFunction& u, const VariableExponent* alpha, int k,
                const DerivativeBundle* db, const std::optional<BoundaryPortion>& gamma) {
    const GridDomain& d = u.dom();
    ScanData sd;
    sd.dom = &d;
    sd.nodes = d.cylinder_nodes();
    const int n = static_cast<int>(sd.nodes.size());
    sd.pts.resize(n);
    for (int i = 0; i < n; ++i) sd.pts[i] = d.node_point(sd.nodes[i]);
    if (alpha) {
        sd.alpha.resize(n);
        for (int i = 0; i < n; ++i) sd.alpha[i] = (*alpha)(sd.pts[i]);
    }
    if (k == 0) {
        sd.m = 1;
        sd.qty.resize(n);
        for (int i = 0; i < n; ++i) sd.qty[i] = u.at(sd.nodes[i]);
    } else if (k == 1) {
        sd.m = d.dim;
        sd.qty.resize(static_cast<std::size_t>(n) * sd.m);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < sd.m; ++c)
                sd.qty[static_cast<std::size_t>(i) * sd.m + c] = db->grad_at(sd.nodes[i], c);
    } else {
        sd.m = d.dim * d.dim;
        sd.qty.resize(static_cast<std::size_t>(n) * sd.m);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < d.dim; ++a)
                for (int bx = 0; bx < d.dim; ++bx)
                    sd.qty[static_cast<std::size_t>(i) * sd.m + a * d.dim + bx] =
                        db->hess_at(sd.nodes[i], a, bx);
    }
    if (gamma.has_value()) {
        sd.wdist.resize(n);
        for (int i = 0; i < n; ++i) sd.wdist[i] = d.d_boundary(sd.pts[i], *gamma);
    }
    return sd;
}

void gather_interior_weights(ScanData& sd) {
    const int n = static_cast<int>(sd.nodes.size());
    sd.wdist.resize(n);
    for (int i = 0; i < n; ++i) sd.wdist[i] = sd.dom->d_interior(sd.pts[i]);
}

double component_diff(const ScanData& sd, int i, int j) {
    const double* qi = sd.qty.data() + static_cast<std::size_t>(i) * sd.m;
    const double* qj = sd.qty.data() + static_cast<std::size_t>(j) * sd.m;
    double m = 0.0;
    for (int c = 0; c < sd.m; ++c) m = std::max(m, std::abs(qi[c] - qj[c]));
    return m;
}

Witness make_witness(const ScanData& sd, const BestEntry& b) {
    Witness w;
    if (b.p >= 0) {
        w.p = sd.nodes[b.p];
        w.q = sd.nodes[b.q];
        w.P = sd.pts[b.p];
        w.Q = sd.pts[b.q];
    }
    return w;
}

// sup over ordered pairs of |q(P)-q(Q)| / d^{alpha(Q)}(P,Q)
BestEntry var_exponent_scan(const ScanData& sd) {
    const int n = static_cast<int>(sd.nodes.size());
    return scan_pairs(n, [&](int i, int j, double& qij, double& qji) {
        const double dist = parabolic_distance(sd.pts[i], sd.pts[j]);
        const double diff = component_diff(sd, i, j);
        qij = diff / std::pow(dist, sd.alpha[j]);
        qji = diff / std::pow(dist, sd.alpha[i]);
    });
}

// sup over ordered pairs of w_{P,Q}^{k+alpha(P)+s} |q(P)-q(Q)| / d^{alpha(P)}
BestEntry weighted_scan(const ScanData& sd, double k_plus_s) {
    const int n = static_cast<int>(sd.nodes.size());
    return scan_pairs(n, [&](int i, int j, double& qij, double& qji) {
        const double dist = parabolic_distance(sd.pts[i], sd.pts[j]);
        const double diff = component_diff(sd, i, j);
        const double w = std::min(sd.wdist[i], sd.wdist[j]);
        qij = std::pow(w, k_plus_s + sd.alpha[i]) * diff / std::pow(dist, sd.alpha[i]);
        qji = std::pow(w, k_plus_s + sd.alpha[j]) * diff / std::pow(dist, sd.alpha[j]);
    });
}

double weighted_sup_scan(const ScanData& sd, double k_plus_s) {
    double m = 0.0;
    const int n = static_cast<int>(sd.nodes.size());
    for (int i = 0; i < n; ++i) {
        double comp = 0.0;
        for (int c = 0; c < sd.m; ++c)
            comp = std::max(comp, std::abs(sd.qty[static_cast<std::size_t>(i) * sd.m + c]));
        m = std::max(m, std::pow(sd.wdist[i], k_plus_s) * comp);
    }
    return m;
}

} // namespace

HolderReport seminorm_var(const GridFunction& u, const VariableExponent& alpha) {
    ScanData sd = gather(u, &alpha, 0, nullptr, std::nullopt);
    if (sd.nodes.size() < 2) throw std::invalid_argument("seminorm_var: need at least 2 nodes");
    const BestEntry b = var_exponent_scan(sd);
    HolderReport r;
    r.value = b.p >= 0 ? b.value : 0.0;
    r.witness = make_witness(sd, b);
    r.breakdown = {{"[u]_alpha", r.value}};
    return r;
}

double pointed_seminorm(const GridFunction& u, const VariableExponent& alpha,
                        const SpaceTimePoint& P) {
    const GridDomain& d = u.dom();
    const double aP = alpha(P);
    const double uP = u.eval(P);
    double best = 0.0;
    for (int id : d.cylinder_nodes()) {
        const SpaceTimePoint Q = d.node_point(id);
        const double dist = parabolic_distance(P, Q);
        if (dist == 0.0) continue;
        best = std::max(best, std::abs(uP - u.at(id)) / std::pow(dist, aP));
    }
    return best;
}

HolderReport norm_0_alpha(const GridFunction& u, const VariableExponent& alpha) {
    HolderReport semi = seminorm_var(u, alpha);
    double sup = 0.0;
    for (int id : u.dom().cylinder_nodes()) sup = std::max(sup, std::abs(u.at(id)));
    HolderReport r;
    r.value = sup + semi.value;
    r.witness = semi.witness;
    r.breakdown = {{"|u|_0", sup}, {"[u]_alpha", semi.value}};
    return r;
}

HolderReport norm_2_1_alpha(const GridFunction& u, const VariableExponent& alpha) {
    const DerivativeBundle db = finite_differences(u);
    const GridDomain& d = u.dom();

    double u0 = 0.0, du0 = 0.0, d2u0 = 0.0, ut0 = 0.0;
    for (int id : d.cylinder_nodes()) {
        u0 = std::max(u0, std::abs(u.at(id)));
        for (int a = 0; a < d.dim; ++a) {
            du0 = std::max(du0, std::abs(db.grad_at(id, a)));
            for (int bx = 0; bx < d.dim; ++bx)
                d2u0 = std::max(d2u0, std::abs(db.hess_at(id, a, bx)));
        }
        ut0 = std::max(ut0, std::abs(db.ut_at(id)));
    }

    ScanData sd2 = gather(u, &alpha, 2, &db, std::nullopt);
    const BestEntry b2 = var_exponent_scan(sd2);

    ScanData sdt = gather(u, &alpha, 0, &db, std::nullopt);
    for (std::size_t i = 0; i < sdt.nodes.size(); ++i) sdt.qty[i] = db.ut_at(sdt.nodes[i]);
    const BestEntry bt = var_exponent_scan(sdt);

    HolderReport r;
    r.value = u0 + du0 + (d2u0 + b2.value) + (ut0 + bt.value);
    r.witness = make_witness(sd2, b2);
    r.breakdown = {{"|u|_0", u0},         {"|Du|_0", du0},      {"|D2u|_0", d2u0},
                   {"[D2u]_alpha", b2.value}, {"|ut|_0", ut0},  {"[ut]_alpha", bt.value}};
    return r;
}

double weighted_sup(const GridFunction& u, int k, double s,
                    const std::optional<BoundaryPortion>& gamma) {
    if (k < 0 || k > 2) throw std::invalid_argument("weighted_sup: unsupported order");
    std::optional<DerivativeBundle> db;
    if (k >= 1) db = finite_differences(u);
    ScanData sd = gather(u, nullptr, k, db ? &*db : nullptr, gamma);
    if (!gamma.has_value()) gather_interior_weights(sd);
    return weighted_sup_scan(sd, k + s);
}

namespace {

HolderReport weighted_seminorm_impl(const GridFunction& u, const VariableExponent& alpha, int k,
                                    double s, const std::optional<BoundaryPortion>& gamma) {
    if (k < 0 || k > 2)
        throw std::invalid_argument("weighted seminorm: unsupported derivative order");
    std::optional<DerivativeBundle> db;
    if (k >= 1) db = finite_differences(u);

    ScanData sd = gather(u, &alpha, k, db ? &*db : nullptr, gamma);
    if (!gamma.has_value()) gather_interior_weights(sd);

    const BestEntry b = weighted_scan(sd, static_cast<double>(k) + s);

    HolderReport r;
    r.value = b.p >= 0 ? b.value : 0.0;
    r.witness = make_witness(sd, b);

    // plain weighted sups [u]*_j^{(s)} for j <= k, same weight distances
    double norm_sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        ScanData sj = gather(u, nullptr, j, db ? &*db : nullptr, gamma);
        if (!gamma.has_value())
            gather_interior_weights(sj);
        else
            sj.wdist = sd.wdist;
        const double plain = weighted_sup_scan(sj, static_cast<double>(j) + s);
        norm_sum += plain;
        r.breakdown.emplace_back("[u]*_" + std::to_string(j) + "^(s)", plain);
    }
    r.breakdown.emplace_back("[u]*_{k,alpha}^(s)", r.value);
    r.breakdown.emplace_back("|u|*_{k,alpha}^(s)", norm_sum + r.value);
    return r;
}

} // namespace

HolderReport weighted_interior_seminorm(const GridFunction& u, const VariableExponent& alpha,
                                        int k, double s) {
    return weighted_seminorm_impl(u, alpha, k, s, std::nullopt);
}

HolderReport boundary_seminorm(const GridFunction& u, const VariableExponent& alpha, int k,
                               const BoundaryPortion& gamma, double s) {
    return weighted_seminorm_impl(u, alpha, k, s, gamma);
}

} // namespace holdervar
