#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "holdervar/geometry.hpp"

namespace holdervar {

class GridFunction;

/// A variable exponent field alpha : cylinder -> (0,1), with its declared
/// range statistics. Instances are immutable; all evaluation is pure.
///
/// Forms:
///  - constant(c)
///  - power_example(gamma, zeta): alpha(x,t) = (gamma + |x|_2)(gamma + t) on
///    B(0,zeta) x (0,zeta); requires e^{-2} < gamma < 1 and zeta < 1 - gamma.
///  - tabulated(GridFunction): nearest-node lookup.
///  - from_closure(fn, alpha_plus, alpha_minus)
class VariableExponent {
public:
    enum class Form { constant, power_example, tabulated, closure };

    static VariableExponent constant(double value);
    static VariableExponent power_example(double gamma, double zeta);
    static VariableExponent tabulated(std::shared_ptr<const GridFunction> samples,
                                      double alpha_plus, double alpha_minus);
    static VariableExponent from_closure(std::function<double(const SpaceTimePoint&)> fn,
                                         double alpha_plus, double alpha_minus);

    /// Shift the field by -delta (used by the mollification bound, where the
    /// smoothed function is measured in the slightly weaker exponent).
    VariableExponent shifted(double delta) const;

    /// Evaluate at a point. The power_example form rejects points far
    /// outside its closed cylinder (beyond a one-collar tolerance) with
    /// std::domain_error.
    double operator()(const SpaceTimePoint& p) const;

    double alpha_plus() const { return alpha_plus_; }
    double alpha_minus() const { return alpha_minus_; }
    Form form() const { return form_; }
    double gamma() const { return gamma_; }
    double zeta() const { return zeta_; }

    /// Annotation slot for the estimated log-Hölder modulus.
    double clog_estimate() const { return clog_estimate_; }
    void set_clog_estimate(double v) { clog_estimate_ = v; }

private:
    Form form_ = Form::constant;
    double value_ = 0.5;
    double gamma_ = 0.0, zeta_ = 0.0;
    std::shared_ptr<const GridFunction> table_;
    std::function<double(const SpaceTimePoint&)> fn_;
    double alpha_plus_ = 0.5, alpha_minus_ = 0.5;
    double clog_estimate_ = -1.0; // negative until estimated
};

struct ClogReport {
    double value = 0.0;
    int p = -1, q = -1; // witness node ids
    SpaceTimePoint P, Q;
};

struct ClogOptions {
    // Exhaustive pair scan up to this many nodes; above it a deterministic
    // stratified scheme is used: a fixed-seed subset of anchor nodes paired
    // against all nodes, plus every nearest-neighbor pair.
    int max_exhaustive_nodes = 20000;
    std::uint64_t seed = 0;
    int anchor_count = 256;
};

/// Largest sampled value of |alpha(P)-alpha(Q)| * |ln d(P,Q)| over node
/// pairs of the domain (the empirical log-Hölder modulus). Identical nodes
/// are skipped; pairs with d >= 1 are included with |ln d| as-is.
ClogReport estimate_clog(const VariableExponent& alpha, const GridDomain& dom,
                         const ClogOptions& opts = {});

struct LogHolderCheck {
    bool ok = false;
    ClogReport worst;
};

/// True iff the empirical modulus is <= M; returns the maximizing pair.
LogHolderCheck check_log_holder(const VariableExponent& alpha, const GridDomain& dom, double M,
                                const ClogOptions& opts = {});

/// Grid scan of sup/inf of alpha over in-domain nodes.
std::pair<double, double> scan_alpha_range(const VariableExponent& alpha, const GridDomain& dom);

} // namespace holdervar
