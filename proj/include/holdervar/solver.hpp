#pragma once

#include <functional>
#include <optional>
#include <string>

#include "holdervar/norms.hpp"

namespace holdervar {

/// Second-order linear parabolic problem
///   u_t - a^{ij} D_ij u - b^i D_i u + c u = f   in the cylinder,
///   u = phi                                     on the parabolic boundary,
/// with ellipticity lambda |zeta|^2 <= a^{ij} zeta_i zeta_j and coefficient
/// bound Lambda. c >= 0 is the monotone case (enforced in existence mode)
/// and gives the discrete maximum principle for the upwinded scheme.
struct ParabolicProblem {
    std::shared_ptr<const GridDomain> dom;
    std::array<GridFunction, 9> a; // row-major dim x dim; symmetric usage
    std::array<GridFunction, 3> b;
    GridFunction c;
    GridFunction f;
    GridFunction phi; // boundary/initial data, defined on the whole cylinder
    double lambda = 1.0;
    double Lambda = 1.0;
    bool existence_mode = false;

    const GridFunction& amat(int i, int j) const { return a[i * dom->dim + j]; }
};

using Closure = std::function<double(const SpaceTimePoint&)>;

/// Convenience constructor sampling all coefficient closures on the domain.
ParabolicProblem make_problem(std::shared_ptr<const GridDomain> dom,
                              const std::array<Closure, 9>& a, const std::array<Closure, 3>& b,
                              Closure c, Closure f, Closure phi, double lambda, double Lambda,
                              bool existence_mode = false);

/// Heat-operator shorthand: a = identity, b = 0, c = 0.
ParabolicProblem make_heat_problem(std::shared_ptr<const GridDomain> dom, Closure f, Closure phi);

/// Sampled ellipticity / sign validation; throws std::invalid_argument on
/// violation. Runs automatically at the start of fd_solve.
void validate_problem(const ParabolicProblem& p, std::uint64_t seed = 0);

struct SolverFailure : std::runtime_error {
    explicit SolverFailure(const std::string& what, int step_)
        : std::runtime_error(what), step(step_) {}
    int step;
};

struct SolveResult {
    GridFunction u;
    int steps = 0;
    int factorizations = 0;
    long iterations = 0;    // iterative path only
    double residual = 0.0;  // sup discrete PDE residual at interior nodes
    // Compatibility of the data on the corner set (spatial boundary at the
    // initial time): sup of |phi_t - L phi - f| there, one-sided stencils.
    // Advisory only; the warning flags values beyond discretization error.
    double compatibility_residual = 0.0;
    bool compatibility_warning = false;
};

struct SolveOptions {
    double iterative_tol = 1e-10; // relative, n = 3 path
    int max_iterations = 20000;
};

/// Backward Euler in time, second-order central differences in space with
/// per-node first-order upwinding of the b-terms when the cell Péclet
/// |b| h / a_diag exceeds 2. Direct banded factorization for n <= 2,
/// Jacobi-preconditioned BiCGStab for n = 3. Boundary nodes carry phi
/// exactly. Deterministic: identical inputs produce bitwise identical u.
SolveResult fd_solve(const ParabolicProblem& p, const SolveOptions& opts = {});

/// Residual of the divergence identity
///   v L0 u - u L0* v = sum_i D_i(v u_{x_i} - u v_{x_i}) - (u v)_t,
/// L0 w = Dw - w_t, L0* w = Dw + w_t (D the Laplacian), all derivatives by
/// finite differences; returns the sup over interior nodes of |LHS - RHS|.
double green_identity_check(const GridFunction& u, const GridFunction& v);

struct SchauderReport {
    double C_global = 0.0;   // |u|_{2,1,alpha} / (|u|_0 + |f|_{0,alpha} + |phi|_{2,alpha})
    double C_interior = 0.0; // |u|*_{2,alpha} / (|u|_0 + |f|^{(2)}_{0,alpha})
    double C_boundary = 0.0; // boundary-weighted variant
    bool vacuous = false;
    std::vector<std::pair<std::string, double>> breakdown;
};

/// Empirical stability constants of the a priori estimates, computed with
/// the grid norms of this library. Zero denominators with a nonzero
/// numerator raise std::runtime_error; all-zero quotients report vacuous.
SchauderReport schauder_constant(const ParabolicProblem& p, const SolveResult& solved,
                                 const VariableExponent& alpha);

/// Constant-coefficient view frozen at P: returns the problem with
/// a = a(P), b = c = 0 and right-hand side
///   F = (a^{ij}(P) - a^{ij}) D_ij u - b^i D_i u - c u + f
/// assembled from the given solution and its derivative bundle.
ParabolicProblem frozen_coefficient_view(const ParabolicProblem& p, const SpaceTimePoint& P,
                                         const GridFunction& u, const DerivativeBundle& du);

} // namespace holdervar
