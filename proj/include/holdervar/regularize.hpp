#pragma once

#include <memory>

#include "holdervar/norms.hpp"

namespace holdervar {

/// A field and exponent extended from the cylinder to an enlarged cylinder
/// (space margin sigma, time margin sigma^2 rounded up to whole steps).
/// Restriction to the original grid reproduces the inputs exactly; the
/// exponent range statistics are preserved.
struct ExtendedField {
    GridFunction f_bar;                        // on the enlarged domain
    VariableExponent alpha_bar;
    double sigma = 0.0;
    std::shared_ptr<const GridDomain> base_dom; // original cylinder
    double norm_ratio = 0.0;                   // |f_bar|_{0,ab,ext} / |f|_{0,a,base}
};

/// Time-direction extension only: values are clamped in time (f(x,0) below,
/// f(x,T) above); same for the exponent.
ExtendedField extend_time(const GridFunction& f, const VariableExponent& alpha, double sigma);

/// Full extension for ball domains: time clamp plus radial reflection across
/// the sphere, f_bar(x,t) = f~(x*, t) with x* = center + (2R - |x-c|) (x-c)/|x-c|
/// outside the ball. Requires shape == ball and sigma + h < radius.
ExtendedField reflect_extension_ball(const GridFunction& f, const VariableExponent& alpha,
                                     double sigma);

/// Discrete mollification at scale eps: convolution against the standard
/// bump exp(-1/(1-|z|^2)) sampled on the Euclidean space-time ball of radius
/// eps, weights renormalized to unit sum. Result lives on the base domain.
/// Requires eps <= sigma and the stencil to stay inside the extended grid
/// (std::invalid_argument otherwise).
GridFunction mollify(const ExtendedField& ext, double eps);

/// Largest Euclidean space-time pair distance below which the sampled
/// exponent modulus stays < delta, halved. Deterministic node subsample
/// above 1500 nodes.
double uniform_continuity_radius(const VariableExponent& alpha, const GridDomain& dom,
                                 double delta);

/// uniform_continuity_radius additionally capped by the extension margins,
/// so mollification at any eps <= threshold is always feasible.
double mollify_epsilon_threshold(const ExtendedField& ext, double delta);

struct MollifyBoundReport {
    double lhs = 0.0;  // |f_eps|_{0, alpha - delta, base}
    double rhs = 0.0;  // 3 |f_bar|_{0, alpha_bar, ext}
    bool pass = false;
    bool hypothesis_met = false; // eps <= eps'(delta)
    double eps = 0.0, delta = 0.0, eps_prime = 0.0;
};

/// Quantitative mollification bound |f_eps|_{0,alpha-delta} <= 3 |f_bar|_{0,alpha_bar}.
/// Runs for any eps (reporting hypothesis_met); requires 0 < delta < alpha_minus.
MollifyBoundReport check_mollify_bound(const ExtendedField& ext, double delta, double eps);

} // namespace holdervar
