#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holdervar/geometry.hpp"

namespace holdervar {

using FieldFn = std::function<double(const SpaceTimePoint&)>;

FieldFn field_zero();
FieldFn field_constant(double c);

/// c0 + sum_a cx[a] x_a + ct t
FieldFn field_linear(std::array<double, kMaxDim> cx, double ct, double c0 = 0.0);

/// e^{-t} prod_a sin(pi x_a)
FieldFn field_sin_product(int dim);

/// Compactly supported space-time bump: prod_a psi((x_a - cx_a)/wx) *
/// psi((t - ct)/wt) with psi(z) = exp(-1/(1-z^2)) on |z| < 1, else 0.
FieldFn field_bump(std::array<double, kMaxDim> cx, double wx, double ct, double wt, int dim,
                   double amplitude = 1.0);

/// Space-only bump times a smooth time window that is 1 on [t0+ramp, inf).
FieldFn field_space_bump_windowed(std::array<double, kMaxDim> cx, double wx, int dim, double t0,
                                  double ramp);

/// Smooth plateau: 1 on the inner box, rolling off to 0 at the outer box.
FieldFn field_plateau(std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi, int dim,
                      double edge_frac);

/// (|x|_2 + sqrt(t))^{(gamma+|x|_2)(gamma+t)} — the radial power cusp with
/// the matching variable exponent; Hölder but not Lipschitz at the origin.
FieldFn field_power_cusp(double gamma, double zeta);

/// Deterministic smooth trigonometric field with seeded coefficients.
FieldFn field_random_trig(int dim, std::uint64_t seed, int modes = 4);

/// Named lookup used by the config layer: zero, one, constant:<v>, linear,
/// quadratic_x1, time, sin_product, bump, plateau, power_cusp, random:<seed>.
FieldFn field_by_name(const std::string& name, int dim, double gamma = 0.5, double zeta = 0.4);

/// Built-in smooth corpus for interpolation / mollification studies.
std::vector<std::pair<std::string, FieldFn>> builtin_corpus(int dim, std::uint64_t seed);

} // namespace holdervar
