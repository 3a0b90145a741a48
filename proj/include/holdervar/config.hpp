#pragma once

#include <map>
#include <string>
#include <vector>

#include "holdervar/exponents.hpp"
#include "holdervar/fields.hpp"
#include "holdervar/geometry.hpp"
#include "holdervar/solver.hpp"

namespace holdervar {

/// Plain key=value configuration ('#' comments, blank lines ignored).
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
    std::vector<double> get_doubles(const std::string& key) const; // comma-separated
    std::vector<int> get_ints(const std::string& key) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Keys: shape=box|ball, lower/upper or center+radius (comma-separated
/// decimals), T, nx, nt. Optional nx/nt overrides for refinement sweeps.
std::shared_ptr<const GridDomain> domain_from_config(const Config& c, int nx_override = 0,
                                                     int nt_override = 0);

/// Keys: exp_form=constant|example, exp_value, exp_gamma, exp_zeta.
VariableExponent exponent_from_config(const Config& c);

/// Keys: op=heat|varcoef|advect, f=<field>, phi=<field>, plus gamma/zeta for
/// power_cusp fields. varcoef uses smooth diagonal coefficients inside
/// [lambda, Lambda]; advect adds first-order terms and a reaction term.
ParabolicProblem problem_from_config(const Config& c, std::shared_ptr<const GridDomain> dom);

FieldFn field_from_config(const Config& c, const std::string& key, int dim);

} // namespace holdervar
