#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holdervar/exponents.hpp"
#include "holdervar/geometry.hpp"

namespace holdervar {

/// Scalar field sampled at the nodes of a GridDomain, with an optional
/// analytic closure used for off-node evaluation and resampling. Values must
/// be finite at every in-domain node.
class GridFunction {
public:
    GridFunction() = default;

    static GridFunction sample(std::shared_ptr<const GridDomain> dom,
                               std::function<double(const SpaceTimePoint&)> fn);
    static GridFunction from_values(std::shared_ptr<const GridDomain> dom,
                                    std::vector<double> values);

    const GridDomain& dom() const { return *dom_; }
    const std::shared_ptr<const GridDomain>& dom_ptr() const { return dom_; }
    double at(int node) const { return values_[node]; }
    std::span<const double> values() const { return values_; }
    bool has_closure() const { return static_cast<bool>(fn_); }
    const std::function<double(const SpaceTimePoint&)>& closure() const { return fn_; }

    /// Closure when present, node value when the point coincides with a
    /// node, multilinear interpolation otherwise.
    double eval(const SpaceTimePoint& p) const;

private:
    std::shared_ptr<const GridDomain> dom_;
    std::vector<double> values_;
    std::function<double(const SpaceTimePoint&)> fn_;
};

/// Gradient, Hessian and time derivative of a grid function, second-order
/// stencils throughout: central where the stencil fits in the domain,
/// one-sided second-order otherwise. The Hessian is stored symmetric by
/// construction. Exact (up to round-off) on space-quadratic, time-quadratic
/// fields.
struct DerivativeBundle {
    int dim = 1;
    static constexpr int stencil_order = 2;
    std::vector<double> grad; // [node*dim + a]
    std::vector<double> hess; // [(node*dim + a)*dim + b]
    std::vector<double> ut;   // [node]

    double grad_at(int node, int a) const { return grad[node * dim + a]; }
    double hess_at(int node, int a, int b) const { return hess[(node * dim + a) * dim + b]; }
    double ut_at(int node) const { return ut[node]; }
};

/// Requires at least 3 nodes per spatial axis and 3 time levels.
DerivativeBundle finite_differences(const GridFunction& u);

/// Apply the first-derivative stencil along one axis (or in time with
/// axis = -1) to an arbitrary per-node array on the same domain.
std::vector<double> apply_first_derivative(const GridDomain& dom, std::span<const double> values,
                                           int axis);

struct Witness {
    int p = -1, q = -1; // node ids (q = -1 for single-point sups)
    SpaceTimePoint P, Q;
};

/// Value of a seminorm/norm computation together with the arg-max witness
/// pair and a per-term breakdown. For sup-type reports the value re-evaluates
/// from the witness; composite norms carry the sum of their breakdown and no
/// witness.
struct HolderReport {
    double value = 0.0;
    std::optional<Witness> witness;
    std::vector<std::pair<std::string, double>> breakdown;

    double term(const std::string& name) const;
};

/// [u]_{alpha(.)} = sup_{P != Q} |u(P)-u(Q)| / d^{alpha(Q)}(P,Q).
/// The exponent is evaluated at the second point of the ordered pair.
HolderReport seminorm_var(const GridFunction& u, const VariableExponent& alpha);

/// [u]_{alpha(P),P} = sup_{Q != P} |u(P)-u(Q)| / d^{alpha(P)}(P,Q), the
/// exponent frozen at P. P may be any point of the closed cylinder.
double pointed_seminorm(const GridFunction& u, const VariableExponent& alpha,
                        const SpaceTimePoint& P);

/// |u|_{0,alpha(.)} = |u|_0 + [u]_{alpha(.)}.
HolderReport norm_0_alpha(const GridFunction& u, const VariableExponent& alpha);

/// |u|_{2,1,alpha(.)} = |u|_0 + |Du|_0 + |D^2 u|_{0,alpha(.)} + |u_t|_{0,alpha(.)}.
/// Matrix magnitudes use the max-norm over entries.
HolderReport norm_2_1_alpha(const GridFunction& u, const VariableExponent& alpha);

/// Plain weighted sup [u]*_k^{(s)} = sup_P w_P^{k+s} |D^k u(P)| where w_P is
/// d_P, or d̄_P when a boundary portion is supplied.
double weighted_sup(const GridFunction& u, int k, double s = 0.0,
                    const std::optional<BoundaryPortion>& gamma = std::nullopt);

/// Interior weighted seminorm
///   [u]*_{k,alpha(.)}^{(s)} = sup_{P != Q} d_{P,Q}^{k+alpha(P)+s}
///                             |D^k u(P) - D^k u(Q)| / d^{alpha(P)}(P,Q),
/// exponent at the first point. k in {0,1,2}; k > 2 is unsupported. The
/// report's breakdown also carries the plain sups [u]*_j^{(s)} for j <= k.
HolderReport weighted_interior_seminorm(const GridFunction& u, const VariableExponent& alpha,
                                        int k, double s = 0.0);

/// Same with d̄ distances to (parabolic boundary \ Gamma).
HolderReport boundary_seminorm(const GridFunction& u, const VariableExponent& alpha, int k,
                               const BoundaryPortion& gamma, double s = 0.0);

/// Worker count used by pair scans (results are bitwise independent of it).
int pair_scan_threads();
void set_pair_scan_threads(int n);

} // namespace holdervar
