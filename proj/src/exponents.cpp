#include "holdervar/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "holdervar/norms.hpp"

namespace holdervar {

VariableExponent VariableExponent::constant(double value) {
    if (!(value > 0.0 && value < 1.0))
        throw std::invalid_argument("VariableExponent: constant value must lie in (0,1)");
    VariableExponent a;
    a.form_ = Form::constant;
    a.value_ = value;
    a.alpha_plus_ = a.alpha_minus_ = value;
    return a;
}

VariableExponent VariableExponent::power_example(double gamma, double zeta) {
    if (!(gamma > std::exp(-2.0) && gamma < 1.0))
        throw std::invalid_argument("VariableExponent: gamma must lie in (e^{-2}, 1)");
    if (!(zeta > 0.0 && zeta < 1.0 - gamma))
        throw std::invalid_argument("VariableExponent: zeta must lie in (0, 1-gamma)");
    VariableExponent a;
    a.form_ = Form::power_example;
    a.gamma_ = gamma;
    a.zeta_ = zeta;
    a.alpha_minus_ = gamma * gamma;
    a.alpha_plus_ = (gamma + zeta) * (gamma + zeta);
    return a;
}

VariableExponent VariableExponent::tabulated(std::shared_ptr<const GridFunction> samples,
                                             double alpha_plus, double alpha_minus) {
    VariableExponent a;
    a.form_ = Form::tabulated;
    a.table_ = std::move(samples);
    a.alpha_plus_ = alpha_plus;
    a.alpha_minus_ = alpha_minus;
    return a;
}

VariableExponent VariableExponent::from_closure(std::function<double(const SpaceTimePoint&)> fn,
                                                double alpha_plus, double alpha_minus) {
    VariableExponent a;
    a.form_ = Form::closure;
    a.fn_ = std::move(fn);
    a.alpha_plus_ = alpha_plus;
    a.alpha_minus_ = alpha_minus;
    return a;
}

VariableExponent VariableExponent::shifted(double delta) const {
    if (!(delta < alpha_minus_))
        throw std::invalid_argument("VariableExponent::shifted: delta must stay below alpha_minus");
    VariableExponent base = *this;
    return from_closure([base, delta](const SpaceTimePoint& p) { return base(p) - delta; },
                        alpha_plus_ - delta, alpha_minus_ - delta);
}

double VariableExponent::operator()(const SpaceTimePoint& p) const {
    switch (form_) {
    case Form::constant:
        return value_;
    case Form::power_example: {
        // Accept the stair-step collar around the closed cylinder; reject
        // points clearly outside.
        const double slack = 0.25 * zeta_;
        double r2 = 0.0;
        for (int a = 0; a < p.dim; ++a) r2 += p.x[a] * p.x[a];
        const double r = std::sqrt(r2);
        if (r > zeta_ + slack || p.t < -slack || p.t > zeta_ + slack)
            throw std::domain_error("VariableExponent: point outside the example domain");
        return (gamma_ + r) * (gamma_ + p.t);
    }
    case Form::tabulated: {
        const GridDomain& d = table_->dom();
        std::array<int, kMaxDim> ix{};
        for (int a = 0; a < d.dim; ++a) {
            const int i = static_cast<int>(std::lround((p.x[a] - d.lower[a]) / d.h));
            ix[a] = std::clamp(i, 0, d.nx - 1);
        }
        const int level =
            std::clamp(static_cast<int>(std::lround((p.t - d.t_begin) / d.tau)), 0, d.nt);
        return table_->at(d.node_id(d.spatial_id(ix), level));
    }
    case Form::closure:
    default:
        return fn_(p);
    }
}

namespace {

struct PairBest {
    double value = -1.0;
    int p = -1, q = -1;

    void consider(double v, int i, int j) {
        if (v > value || (v == value && (i < p || (i == p && j < q)))) {
            value = v;
            p = i;
            q = j;
        }
    }
};

} // namespace

ClogReport estimate_clog(const VariableExponent& alpha, const GridDomain& dom,
                         const ClogOptions& opts) {
    const auto& nodes = dom.cylinder_nodes();
    const int n = static_cast<int>(nodes.size());
    if (n < 2) throw std::invalid_argument("estimate_clog: need at least 2 nodes");

    std::vector<SpaceTimePoint> pts(n);
    std::vector<double> av(n);
    for (int i = 0; i < n; ++i) {
        pts[i] = dom.node_point(nodes[i]);
        av[i] = alpha(pts[i]);
    }

    PairBest best;
    best.value = 0.0;
    auto consider = [&](int i, int j) {
        const double d = parabolic_distance(pts[i], pts[j]);
        if (d == 0.0) return; // indeterminate 0*inf, contributes 0 in the limit
        const double v = std::abs(av[i] - av[j]) * std::abs(std::log(d));
        best.consider(v, i, j);
    };

    if (n <= opts.max_exhaustive_nodes) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) consider(i, j);
    } else {
        // Stratified deterministic sampling: fixed-seed anchors against all
        // nodes, plus all nearest-neighbor pairs (largest |ln d| region).
        std::mt19937_64 rng(opts.seed);
        std::vector<int> anchors(std::min(opts.anchor_count, n));
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (auto& a : anchors) a = pick(rng);
        std::sort(anchors.begin(), anchors.end());
        anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
        for (int a : anchors)
            for (int j = 0; j < n; ++j)
                if (j != a) consider(std::min(a, j), std::max(a, j));
        // neighbor pairs in the flattened cylinder-node ordering approximate
        // grid adjacency in every axis via the strides of the full tensor
        for (int i = 0; i + 1 < n; ++i) consider(i, i + 1);
        const int sstride = 1, tstride = dom.spatial_count();
        (void)sstride;
        for (int i = 0; i < n; ++i) {
            const int id = nodes[i];
            const int up = id + tstride;
            if (up < dom.node_count() && dom.in_domain(up)) {
                const auto it = std::lower_bound(nodes.begin(), nodes.end(), up);
                if (it != nodes.end() && *it == up)
                    consider(i, static_cast<int>(it - nodes.begin()));
            }
        }
    }

    ClogReport rep;
    rep.value = best.value;
    if (best.p >= 0) {
        rep.p = nodes[best.p];
        rep.q = nodes[best.q];
        rep.P = pts[best.p];
        rep.Q = pts[best.q];
    }
    return rep;
}

LogHolderCheck check_log_holder(const VariableExponent& alpha, const GridDomain& dom, double M,
                                const ClogOptions& opts) {
    LogHolderCheck c;
    c.worst = estimate_clog(alpha, dom, opts);
    c.ok = c.worst.value <= M;
    return c;
}

std::pair<double, double> scan_alpha_range(const VariableExponent& alpha, const GridDomain& dom) {
    double lo = 1.0, hi = 0.0;
    for (int id : dom.cylinder_nodes()) {
        const double v = alpha(dom.node_point(id));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {hi, lo}; // (alpha_plus, alpha_minus)
}

} // namespace holdervar
