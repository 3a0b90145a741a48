#include "holdervar/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holdervar {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: malformed line '" + line + "'");
        c.kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

const std::string& Config::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw std::invalid_argument("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const { return std::stod(get(key)); }
double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
int Config::get_int(const std::string& key) const { return std::stoi(get(key)); }
int Config::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(get(key));
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(trim(tok)));
    return out;
}

std::vector<int> Config::get_ints(const std::string& key) const {
    std::vector<int> out;
    std::istringstream in(get(key));
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(trim(tok)));
    return out;
}

std::shared_ptr<const GridDomain> domain_from_config(const Config& c, int nx_override,
                                                     int nt_override) {
    const std::string shape = c.get_or("shape", "box");
    const double T = c.get_double("T");
    const int nx = nx_override > 0 ? nx_override : c.get_int("nx");
    const int nt = nt_override > 0 ? nt_override : c.get_int("nt");
    if (shape == "box") {
        return make_box_domain(c.get_doubles("lower"), c.get_doubles("upper"), T, nx, nt);
    }
    if (shape == "ball") {
        return make_ball_domain(c.get_doubles("center"), c.get_double("radius"), T, nx, nt);
    }
    throw std::invalid_argument("config: unknown shape '" + shape + "'");
}

VariableExponent exponent_from_config(const Config& c) {
    const std::string form = c.get_or("exp_form", "constant");
    if (form == "constant") return VariableExponent::constant(c.get_double_or("exp_value", 0.5));
    if (form == "example")
        return VariableExponent::power_example(c.get_double_or("exp_gamma", 0.5),
                                               c.get_double_or("exp_zeta", 0.4));
    throw std::invalid_argument("config: unknown exp_form '" + form + "'");
}

FieldFn field_from_config(const Config& c, const std::string& key, int dim) {
    return field_by_name(c.get(key), dim, c.get_double_or("exp_gamma", 0.5),
                         c.get_double_or("exp_zeta", 0.4));
}

ParabolicProblem problem_from_config(const Config& c, std::shared_ptr<const GridDomain> dom) {
    const int n = dom->dim;
    const std::string op = c.get_or("op", "heat");
    FieldFn f = field_from_config(c, "f", n);
    FieldFn phi = c.has("phi") ? field_from_config(c, "phi", n) : field_zero();

    if (op == "heat") return make_heat_problem(dom, f, phi);

    std::array<Closure, 9> a;
    std::array<Closure, 3> b;
    Closure cc = field_zero();
    double lambda = 1.0, Lambda = 1.0;

    if (op == "varcoef") {
        // smooth diagonal coefficients within [0.5, 1.5]
        lambda = 0.5;
        Lambda = 4.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j) {
                    a[i * n + j] = field_zero();
                } else {
                    a[i * n + j] = [i](const SpaceTimePoint& p) {
                        return 1.0 + 0.4 * std::sin(2.0 * p.x[i % kMaxDim]) *
                                         std::cos(1.0 + p.t);
                    };
                }
            }
        for (int i = 0; i < n; ++i) b[i] = field_zero();
    } else if (op == "advect") {
        lambda = 0.8;
        Lambda = 6.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[i * n + j] = (i == j) ? field_constant(1.0) : field_zero();
        for (int i = 0; i < n; ++i)
            b[i] = [i](const SpaceTimePoint& p) { return 0.5 * std::cos(p.x[i % kMaxDim]); };
        cc = [](const SpaceTimePoint& p) { return 0.25 * (1.0 + std::sin(p.t)); };
    } else {
        throw std::invalid_argument("config: unknown op '" + op + "'");
    }
    return make_problem(dom, a, b, cc, f, phi, lambda, Lambda,
                        c.get_int_or("existence_mode", 0) != 0);
}

} // namespace holdervar
