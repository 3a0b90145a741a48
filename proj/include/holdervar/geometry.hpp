#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace holdervar {

inline constexpr int kMaxDim = 3;

/// A point of the space-time cylinder. Spatial coordinates are in length
/// units, time is in length^2 units (parabolic scaling); no unit conversions
/// happen anywhere else in the library.
struct SpaceTimePoint {
    std::array<double, kMaxDim> x{};
    double t = 0.0;
    int dim = 1;
};

inline SpaceTimePoint make_point(std::initializer_list<double> coords, double t) {
    SpaceTimePoint p;
    p.dim = static_cast<int>(coords.size());
    int i = 0;
    for (double c : coords) p.x[i++] = c;
    p.t = t;
    return p;
}

/// Max-norm spatial distance (the default norm for space variables).
double space_dist_max(const SpaceTimePoint& p, const SpaceTimePoint& q);

/// Euclidean spatial distance. Used by the heat kernel exponential, by
/// ball-domain radial geometry and by the mollifier ball; everything else
/// uses the max-norm.
double space_dist_euclid(const SpaceTimePoint& p, const SpaceTimePoint& q);

/// Parabolic metric d(P,Q) = max(|x1-x2|_inf, sqrt(|t1-t2|)).
/// Throws std::invalid_argument on spatial dimension mismatch.
double parabolic_distance(const SpaceTimePoint& p, const SpaceTimePoint& q);

/// Backward-in-time metric ball ("semicube") with top P and radius delta:
/// N(P,delta) = { Q : d(P,Q) <= delta and t_Q <= t_P }.
/// Requires delta > 0.
bool semicube_contains(const SpaceTimePoint& top, double delta, const SpaceTimePoint& q);

enum class Shape { box, ball };

/// Selector for a portion Gamma of the parabolic boundary. Distances d̄_P
/// are measured to the complement of Gamma within the parabolic boundary;
/// selecting the full boundary leaves an empty target set and the distance
/// is capped at the parabolic diameter of the cylinder.
struct BoundaryPortion {
    enum class Kind { empty, initial_slice, lateral_face, full };
    Kind kind = Kind::empty;
    int face_axis = -1;     // lateral_face only (box domains)
    bool face_high = false; // low or high face along face_axis

    static BoundaryPortion empty() { return {}; }
    static BoundaryPortion initial_slice() { return {Kind::initial_slice, -1, false}; }
    static BoundaryPortion lateral_face(int axis, bool high) {
        return {Kind::lateral_face, axis, high};
    }
    static BoundaryPortion full() { return {Kind::full, -1, false}; }
};

struct GridDomainSpec {
    Shape shape = Shape::box;
    int dim = 1;
    std::array<double, kMaxDim> lower{}; // bounding box (== domain for boxes)
    std::array<double, kMaxDim> upper{};
    std::array<double, kMaxDim> center{}; // ball only
    double radius = 0.0;                  // ball only
    double t_begin = 0.0;
    double t_end = 0.0;
    int nx = 0;
    int nt = 0;
};

/// Discretized space-time cylinder on a regular tensor grid.
///
/// Time levels are t_begin + k*tau for k = 0..nt, so nt*tau spans the time
/// horizon exactly. Spatial nodes are nx per axis with spacing h. Ball
/// domains use a stair-step mask on the same tensor grid: a node is interior
/// iff its center distance is < radius - h/2, and a boundary node iff it is
/// within h of the sphere and not interior. Nodes outside that collar are
/// not part of the domain. All state is immutable after construction.
class GridDomain {
public:
    explicit GridDomain(const GridDomainSpec& spec);

    Shape shape = Shape::box;
    int dim = 1;
    std::array<double, kMaxDim> lower{};
    std::array<double, kMaxDim> upper{};
    std::array<double, kMaxDim> center{};
    double radius = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    int nx = 0; // nodes per spatial axis
    int nt = 0; // time steps (nt+1 levels)
    double h = 0.0;
    double tau = 0.0;

    int spatial_count() const { return spatial_count_; }
    int node_count() const { return spatial_count_ * (nt + 1); }
    double T() const { return t_end - t_begin; }

    bool in_domain(int node) const { return in_domain_[node] != 0; }
    bool is_interior(int node) const { return interior_[node] != 0; }
    bool on_parabolic_boundary(int node) const { return parabolic_boundary_[node] != 0; }
    bool spatial_in_domain(int snode) const { return spatial_in_domain_[snode] != 0; }
    bool spatial_interior(int snode) const { return spatial_interior_[snode] != 0; }

    /// Node ids (time-major) of every in-domain node of the closed cylinder.
    const std::vector<int>& cylinder_nodes() const { return cylinder_nodes_; }
    /// Spatial ids of in-domain spatial nodes.
    const std::vector<int>& spatial_nodes() const { return spatial_nodes_; }

    int node_id(int snode, int level) const { return level * spatial_count_ + snode; }
    int spatial_of(int node) const { return node % spatial_count_; }
    int level_of(int node) const { return node / spatial_count_; }

    std::array<int, kMaxDim> spatial_indices(int snode) const;
    int spatial_id(const std::array<int, kMaxDim>& ix) const;
    SpaceTimePoint node_point(int node) const;
    SpaceTimePoint spatial_point(int snode, double t) const;
    double time_of_level(int level) const { return t_begin + level * tau; }

    /// Analytic distance from x to the spatial boundary: max-norm face gap
    /// for boxes, radius - |x - center|_2 for balls (clamped at 0). This is
    /// the true-domain distance, not the mask distance.
    double dist_lateral(const SpaceTimePoint& p) const;

    /// Parabolic diameter max(diam_inf(Omega), sqrt(T)); cap for distances
    /// to an empty boundary target.
    double parabolic_diameter() const;

    /// d_P = min(t - t_begin, dist(x, dOmega)).
    double d_interior(const SpaceTimePoint& p) const;

    /// d̄_P = parabolic distance from P to (parabolic boundary \ Gamma).
    /// Throws std::invalid_argument for selectors that reference a region
    /// outside the parabolic boundary (bad axis, lateral face of a ball).
    double d_boundary(const SpaceTimePoint& p, const BoundaryPortion& gamma) const;

private:
    void build_masks();

    int spatial_count_ = 0;
    std::vector<std::uint8_t> spatial_in_domain_;
    std::vector<std::uint8_t> spatial_interior_;
    std::vector<std::uint8_t> in_domain_;
    std::vector<std::uint8_t> interior_;
    std::vector<std::uint8_t> parabolic_boundary_;
    std::vector<int> cylinder_nodes_;
    std::vector<int> spatial_nodes_;
};

struct BoundaryDistances {
    double d;     // d_P
    double d_bar; // d̄_P
};

/// Pointwise d_P and d̄_P; pairwise minima are computed by callers.
/// P must lie inside the closed cylinder.
BoundaryDistances boundary_distances(const GridDomain& dom, const SpaceTimePoint& p,
                                     const BoundaryPortion& gamma = BoundaryPortion::empty());

std::shared_ptr<const GridDomain> make_domain(const GridDomainSpec& spec);

std::shared_ptr<const GridDomain> make_box_domain(std::vector<double> lower,
                                                  std::vector<double> upper, double T, int nx,
                                                  int nt, double t_begin = 0.0);

std::shared_ptr<const GridDomain> make_ball_domain(std::vector<double> center, double radius,
                                                   double T, int nx, int nt, double t_begin = 0.0);

} // namespace holdervar
