#pragma once

#include <span>
#include <utility>
#include <vector>

#include "holdervar/kernels.hpp"
#include "holdervar/norms.hpp"

namespace holdervar {

struct PotentialOptions {
    bool with_vs = true;
    bool check_support = true; // support preconditions are enforced when vs is requested
};

struct QuadratureMeta {
    double eps_t = 0.0; // singular time cutoff (one time step)
    std::string spatial_rule = "tensor-trapezoid";
    int nx = 0;
    int time_levels = 0;
};

struct PotentialValues {
    std::vector<double> v;
    std::vector<double> vs; // empty when not requested
    QuadratureMeta meta;
};

/// Volume heat potential v(y,s) = int_0^s int f(x,t) K(x,t;y,s) dx dt on a
/// box source domain, tensor-trapezoid in space and trapezoid in time with a
/// one-step singular cutoff near t = s plus the zeroth-moment correction
/// f(y,s)*eps_t. The time derivative uses the representation
/// v_s(y,s) = f(y,s) + int_0^s int f * K_s (first-order near the cutoff).
///
/// Support preconditions (checked when vs is requested): f vanishes on the
/// lateral fences of the box except the high fence of the last axis, and on
/// the initial slice. Violations raise std::runtime_error; evaluation times
/// s <= 0 raise std::invalid_argument.
PotentialValues heat_potential_at(const GridFunction& f, const KernelSpec& spec,
                                  std::span<const SpaceTimePoint> eval_pts,
                                  const PotentialOptions& opts = {});

struct PotentialResult {
    GridFunction v;
    GridFunction vs; // empty GridFunction when not requested
    QuadratureMeta meta;
};

/// Grid convenience: evaluates at every in-domain node of eval_dom (v = 0 and
/// vs = f at the initial slice, by the Duhamel limit).
PotentialResult heat_potential(const GridFunction& f, const KernelSpec& spec,
                               std::shared_ptr<const GridDomain> eval_dom,
                               const PotentialOptions& opts = {});

struct VsBoundReport {
    double C = 0.0;
    bool vacuous = true;
    int argmax = -1;           // pair index
    double worst_quotient = 0.0;
    double worst_denominator = 0.0;
};

/// Measured constant for the Hölder bound on the potential's time
/// derivative: sup over sampled pairs of
///   (|vs(P1) - vs(P2)| / d^{alpha(P1)}(P1,P2)) / (sum of the four pointed
///   seminorms of f at (y1,s1), (y1,s2), (y2,s1), (y2,s2)).
/// Pairs with zero quotient and zero denominator are skipped; a zero
/// denominator with a nonzero quotient raises std::runtime_error (it signals
/// quadrature failure).
VsBoundReport vs_holder_bound(const GridFunction& f, const VariableExponent& alpha,
                              std::span<const std::pair<SpaceTimePoint, SpaceTimePoint>> pairs,
                              const KernelSpec& spec, const PotentialOptions& opts = {});

} // namespace holdervar
