#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holdervar/config.hpp"
#include "holdervar/potentials.hpp"
#include "holdervar/regularize.hpp"
#include "holdervar/solver.hpp"

namespace holdervar {

struct ExperimentConfig {
    std::string command; // norms | kernel-check | potential | solve | schauder |
                         // mollify-check | interp-check | example
    Config cfg;
    std::vector<int> levels; // strictly increasing nx levels; empty = config default
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool plots = false;
};

/// Quotient sequence of the optimality probe: points theta_n = (zeta/n,
/// 0,..,0, 1/n^2) against the origin, q_n = |f(theta_n) - f(0)| /
/// d^{beta}(theta_n, 0) with f the radial power cusp. Requires
/// alpha_minus < beta < 1 and n_max >= 2.
struct QnProbe {
    std::vector<double> q; // q[0] = q_1
    double ratio_last_first = 0.0;
    bool eventually_increasing = false; // nondecreasing from some n_0 <= n_max/2 on
};
QnProbe optimality_probe(double gamma, double zeta, double beta, int n_max, int dim = 1);

/// Minimal empirical constant C(eps) over a corpus so that
///   [u]*_{j,beta} <= C |u|_0 + eps [u]*_{k,alpha}
/// holds for every corpus member. Requires j + beta_plus < k + alpha_minus.
struct InterpConstant {
    double C = 0.0;
    std::string argmax_field;
};
InterpConstant minimal_interp_constant(
    const std::vector<std::pair<std::string, GridFunction>>& corpus, const VariableExponent& alpha,
    const VariableExponent& beta, int k, int j, double eps);

/// Sup of |v_t - Lap v - f| over probe points, v evaluated by heat_potential
/// on a centered difference stencil with the source grid's h and tau.
double duhamel_residual(const GridFunction& f, const KernelSpec& spec,
                        std::span<const SpaceTimePoint> probes);

/// One-point interior estimate probe on a semicube N(P, d):
/// |D^2 u(P)| against |f|_{0,N} + d^{alpha(P)} [f]_{alpha(P),P,N} + |u|_{0,N} d^{-2}.
struct InteriorEstimateProbe {
    double lhs = 0.0;
    double f_sup = 0.0;
    double f_pointed_term = 0.0;
    double u_term = 0.0;
    double C = 0.0; // lhs / (sum of the three)
    int semicube_nodes = 0;
};
InteriorEstimateProbe interior_estimate_probe(const GridFunction& u, const DerivativeBundle& du,
                                              const GridFunction& f, const VariableExponent& alpha,
                                              const SpaceTimePoint& P, double d);

/// Executes one batch command, writing CSV tables and a JSON summary into
/// out_dir. Returns the summary path. Reruns with identical config and seed
/// produce byte-identical files.
std::string run_command(const ExperimentConfig& ec);

} // namespace holdervar
