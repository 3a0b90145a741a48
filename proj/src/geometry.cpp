#include "holdervar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holdervar {

double space_dist_max(const SpaceTimePoint& p, const SpaceTimePoint& q) {
    double m = 0.0;
    for (int a = 0; a < p.dim; ++a) m = std::max(m, std::abs(p.x[a] - q.x[a]));
    return m;
}

double space_dist_euclid(const SpaceTimePoint& p, const SpaceTimePoint& q) {
    double s = 0.0;
    for (int a = 0; a < p.dim; ++a) {
        const double d = p.x[a] - q.x[a];
        s += d * d;
    }
    return std::sqrt(s);
}

double parabolic_distance(const SpaceTimePoint& p, const SpaceTimePoint& q) {
    if (p.dim != q.dim)
        throw std::invalid_argument("parabolic_distance: spatial dimension mismatch");
    return std::max(space_dist_max(p, q), std::sqrt(std::abs(p.t - q.t)));
}

bool semicube_contains(const SpaceTimePoint& top, double delta, const SpaceTimePoint& q) {
    if (!(delta > 0.0)) throw std::invalid_argument("semicube_contains: delta must be positive");
    return parabolic_distance(top, q) <= delta && q.t <= top.t;
}

GridDomain::GridDomain(const GridDomainSpec& spec) {
    shape = spec.shape;
    dim = spec.dim;
    lower = spec.lower;
    upper = spec.upper;
    center = spec.center;
    radius = spec.radius;
    t_begin = spec.t_begin;
    t_end = spec.t_end;
    nx = spec.nx;
    nt = spec.nt;

    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("GridDomain: dim out of range");
    if (nx < 2) throw std::invalid_argument("GridDomain: nx must be >= 2");
    if (nt < 1) throw std::invalid_argument("GridDomain: nt must be >= 1");
    if (!(t_end > t_begin)) throw std::invalid_argument("GridDomain: empty time interval");
    if (shape == Shape::ball && !(radius > 0.0))
        throw std::invalid_argument("GridDomain: ball radius must be positive");
    for (int a = 0; a < dim; ++a)
        if (!(upper[a] > lower[a]))
            throw std::invalid_argument("GridDomain: empty spatial extent");

    h = (upper[0] - lower[0]) / (nx - 1);
    for (int a = 1; a < dim; ++a) {
        const double ha = (upper[a] - lower[a]) / (nx - 1);
        if (std::abs(ha - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("GridDomain: anisotropic spacing not supported");
    }
    tau = (t_end - t_begin) / nt;

    spatial_count_ = 1;
    for (int a = 0; a < dim; ++a) spatial_count_ *= nx;

    build_masks();
}

std::array<int, kMaxDim> GridDomain::spatial_indices(int snode) const {
    std::array<int, kMaxDim> ix{};
    for (int a = 0; a < dim; ++a) {
        ix[a] = snode % nx;
        snode /= nx;
    }
    return ix;
}

int GridDomain::spatial_id(const std::array<int, kMaxDim>& ix) const {
    int id = 0;
    for (int a = dim - 1; a >= 0; --a) id = id * nx + ix[a];
    return id;
}

SpaceTimePoint GridDomain::spatial_point(int snode, double t) const {
    SpaceTimePoint p;
    p.dim = dim;
    const auto ix = spatial_indices(snode);
    for (int a = 0; a < dim; ++a) p.x[a] = lower[a] + ix[a] * h;
    p.t = t;
    return p;
}

SpaceTimePoint GridDomain::node_point(int node) const {
    return spatial_point(spatial_of(node), time_of_level(level_of(node)));
}

void GridDomain::build_masks() {
    spatial_in_domain_.assign(spatial_count_, 0);
    spatial_interior_.assign(spatial_count_, 0);

    for (int s = 0; s < spatial_count_; ++s) {
        const SpaceTimePoint p = spatial_point(s, t_begin);
        if (shape == Shape::box) {
            spatial_in_domain_[s] = 1;
            const auto ix = spatial_indices(s);
            bool interior = true;
            for (int a = 0; a < dim; ++a)
                if (ix[a] == 0 || ix[a] == nx - 1) interior = false;
            spatial_interior_[s] = interior ? 1 : 0;
        } else {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                const double d = p.x[a] - center[a];
                r2 += d * d;
            }
            const double r = std::sqrt(r2);
            if (r < radius - 0.5 * h) {
                spatial_in_domain_[s] = 1;
                spatial_interior_[s] = 1;
            } else if (r <= radius + h) {
                // stair-step boundary collar
                spatial_in_domain_[s] = 1;
            }
        }
    }

    const int total = node_count();
    in_domain_.assign(total, 0);
    interior_.assign(total, 0);
    parabolic_boundary_.assign(total, 0);
    cylinder_nodes_.clear();
    spatial_nodes_.clear();

    for (int s = 0; s < spatial_count_; ++s)
        if (spatial_in_domain_[s]) spatial_nodes_.push_back(s);

    for (int k = 0; k <= nt; ++k) {
        for (int s = 0; s < spatial_count_; ++s) {
            if (!spatial_in_domain_[s]) continue;
            const int id = node_id(s, k);
            in_domain_[id] = 1;
            cylinder_nodes_.push_back(id);
            const bool lateral = !spatial_interior_[s];
            if (lateral || k == 0)
                parabolic_boundary_[id] = 1;
            else
                interior_[id] = 1;
        }
    }
}

double GridDomain::dist_lateral(const SpaceTimePoint& p) const {
    if (shape == Shape::box) {
        double m = upper[0] - lower[0];
        for (int a = 0; a < dim; ++a)
            m = std::min({m, p.x[a] - lower[a], upper[a] - p.x[a]});
        return std::max(0.0, m);
    }
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double d = p.x[a] - center[a];
        r2 += d * d;
    }
    return std::max(0.0, radius - std::sqrt(r2));
}

double GridDomain::parabolic_diameter() const {
    double sd = 0.0;
    if (shape == Shape::box) {
        for (int a = 0; a < dim; ++a) sd = std::max(sd, upper[a] - lower[a]);
    } else {
        sd = 2.0 * radius;
    }
    return std::max(sd, std::sqrt(T()));
}

double GridDomain::d_interior(const SpaceTimePoint& p) const {
    return std::min(std::max(0.0, p.t - t_begin), dist_lateral(p));
}

namespace {

// Max-norm distance from x to one box face, with time free (lateral fence).
double face_gap(const GridDomain& dom, const SpaceTimePoint& p, int axis, bool high) {
    return std::abs(high ? dom.upper[axis] - p.x[axis] : p.x[axis] - dom.lower[axis]);
}

} // namespace

double GridDomain::d_boundary(const SpaceTimePoint& p, const BoundaryPortion& gamma) const {
    using Kind = BoundaryPortion::Kind;
    if (gamma.kind == Kind::lateral_face) {
        if (shape != Shape::box)
            throw std::invalid_argument("d_boundary: lateral_face selector requires a box domain");
        if (gamma.face_axis < 0 || gamma.face_axis >= dim)
            throw std::invalid_argument("d_boundary: face axis outside the parabolic boundary");
    }

    const double to_initial = std::sqrt(std::max(0.0, p.t - t_begin));

    switch (gamma.kind) {
    case Kind::full:
        return parabolic_diameter();
    case Kind::initial_slice:
        return dist_lateral(p);
    case Kind::lateral_face: {
        double lat = upper[gamma.face_axis] - lower[gamma.face_axis];
        for (int a = 0; a < dim; ++a) {
            for (int side = 0; side < 2; ++side) {
                if (a == gamma.face_axis && (side == 1) == gamma.face_high) continue;
                lat = std::min(lat, face_gap(*this, p, a, side == 1));
            }
        }
        return std::min(to_initial, lat);
    }
    case Kind::empty:
    default:
        return std::min(to_initial, dist_lateral(p));
    }
}

BoundaryDistances boundary_distances(const GridDomain& dom, const SpaceTimePoint& p,
                                     const BoundaryPortion& gamma) {
    return {dom.d_interior(p), dom.d_boundary(p, gamma)};
}

std::shared_ptr<const GridDomain> make_domain(const GridDomainSpec& spec) {
    return std::make_shared<const GridDomain>(spec);
}

std::shared_ptr<const GridDomain> make_box_domain(std::vector<double> lower,
                                                  std::vector<double> upper, double T, int nx,
                                                  int nt, double t_begin) {
    if (lower.size() != upper.size() || lower.empty() ||
        lower.size() > static_cast<std::size_t>(kMaxDim))
        throw std::invalid_argument("make_box_domain: bad bounds");
    GridDomainSpec spec;
    spec.shape = Shape::box;
    spec.dim = static_cast<int>(lower.size());
    for (std::size_t a = 0; a < lower.size(); ++a) {
        spec.lower[a] = lower[a];
        spec.upper[a] = upper[a];
    }
    spec.t_begin = t_begin;
    spec.t_end = t_begin + T;
    spec.nx = nx;
    spec.nt = nt;
    return make_domain(spec);
}

std::shared_ptr<const GridDomain> make_ball_domain(std::vector<double> center, double radius,
                                                   double T, int nx, int nt, double t_begin) {
    if (center.empty() || center.size() > static_cast<std::size_t>(kMaxDim))
        throw std::invalid_argument("make_ball_domain: bad center");
    GridDomainSpec spec;
    spec.shape = Shape::ball;
    spec.dim = static_cast<int>(center.size());
    for (std::size_t a = 0; a < center.size(); ++a) {
        spec.center[a] = center[a];
        spec.lower[a] = center[a] - radius;
        spec.upper[a] = center[a] + radius;
    }
    spec.radius = radius;
    spec.t_begin = t_begin;
    spec.t_end = t_begin + T;
    spec.nx = nx;
    spec.nt = nt;
    return make_domain(spec);
}

} // namespace holdervar
