#include "holdervar/fields.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace holdervar {

namespace {

double psi(double z) {
    const double z2 = z * z;
    if (z2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - z2));
}

// smooth step: 0 for z <= 0, 1 for z >= 1
double smoothstep(double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / z);
    const double b = std::exp(-1.0 / (1.0 - z));
    return a / (a + b);
}

} // namespace

FieldFn field_zero() {
    return [](const SpaceTimePoint&) { return 0.0; };
}

FieldFn field_constant(double c) {
    return [c](const SpaceTimePoint&) { return c; };
}

FieldFn field_linear(std::array<double, kMaxDim> cx, double ct, double c0) {
    return [cx, ct, c0](const SpaceTimePoint& p) {
        double v = c0 + ct * p.t;
        for (int a = 0; a < p.dim; ++a) v += cx[a] * p.x[a];
        return v;
    };
}

FieldFn field_sin_product(int dim) {
    return [dim](const SpaceTimePoint& p) {
        double v = std::exp(-p.t);
        for (int a = 0; a < dim; ++a) v *= std::sin(std::numbers::pi * p.x[a]);
        return v;
    };
}

FieldFn field_bump(std::array<double, kMaxDim> cx, double wx, double ct, double wt, int dim,
                   double amplitude) {
    const double norm = amplitude / std::pow(psi(0.0), dim + 1);
    return [=](const SpaceTimePoint& p) {
        double v = norm * psi((p.t - ct) / wt);
        for (int a = 0; a < dim; ++a) v *= psi((p.x[a] - cx[a]) / wx);
        return v;
    };
}

FieldFn field_space_bump_windowed(std::array<double, kMaxDim> cx, double wx, int dim, double t0,
                                  double ramp) {
    const double norm = 1.0 / std::pow(psi(0.0), dim);
    return [=](const SpaceTimePoint& p) {
        double v = norm * smoothstep((p.t - t0) / ramp);
        for (int a = 0; a < dim; ++a) v *= psi((p.x[a] - cx[a]) / wx);
        return v;
    };
}

FieldFn field_plateau(std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi, int dim,
                      double edge_frac) {
    return [=](const SpaceTimePoint& p) {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) {
            const double w = (hi[a] - lo[a]) * edge_frac;
            v *= smoothstep((p.x[a] - lo[a]) / w) * smoothstep((hi[a] - p.x[a]) / w);
        }
        return v;
    };
}

FieldFn field_power_cusp(double gamma, double zeta) {
    (void)zeta;
    return [gamma](const SpaceTimePoint& p) {
        double r2 = 0.0;
        for (int a = 0; a < p.dim; ++a) r2 += p.x[a] * p.x[a];
        const double r = std::sqrt(r2);
        const double t = std::max(0.0, p.t);
        const double base = r + std::sqrt(t);
        const double expo = (gamma + r) * (gamma + t);
        return base == 0.0 ? 0.0 : std::pow(base, expo);
    };
}

FieldFn field_random_trig(int dim, std::uint64_t seed, int modes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> wave(1, 3);

    struct Mode {
        double a;
        std::array<double, kMaxDim> k;
        std::array<double, kMaxDim> ph;
        double omega, tph;
    };
    std::vector<Mode> ms(modes);
    for (auto& m : ms) {
        m.a = amp(rng);
        for (int a = 0; a < dim; ++a) {
            m.k[a] = wave(rng) * std::numbers::pi;
            m.ph[a] = phase(rng);
        }
        m.omega = wave(rng) * 1.0;
        m.tph = phase(rng);
    }
    return [ms, dim](const SpaceTimePoint& p) {
        double v = 0.0;
        for (const auto& m : ms) {
            double term = m.a * std::cos(m.omega * p.t + m.tph);
            for (int a = 0; a < dim; ++a) term *= std::sin(m.k[a] * p.x[a] + m.ph[a]);
            v += term;
        }
        return v;
    };
}

FieldFn field_by_name(const std::string& name, int dim, double gamma, double zeta) {
    if (name == "zero") return field_zero();
    if (name == "one") return field_constant(1.0);
    if (name.rfind("constant:", 0) == 0) return field_constant(std::stod(name.substr(9)));
    if (name == "linear") return field_linear({1.0, 0.5, 0.25}, 0.5, 0.0);
    if (name == "quadratic_x1")
        return [](const SpaceTimePoint& p) { return p.x[0] * p.x[0]; };
    if (name == "time")
        return [](const SpaceTimePoint& p) { return p.t; };
    if (name == "sin_product") return field_sin_product(dim);
    if (name == "bump") {
        std::array<double, kMaxDim> c{};
        for (int a = 0; a < dim; ++a) c[a] = 0.5;
        return field_bump(c, 0.3, 0.5, 0.45, dim);
    }
    if (name == "plateau") {
        std::array<double, kMaxDim> lo{}, hi{};
        for (int a = 0; a < dim; ++a) {
            lo[a] = 0.0;
            hi[a] = 1.0;
        }
        return field_plateau(lo, hi, dim, 0.1);
    }
    if (name == "power_cusp") return field_power_cusp(gamma, zeta);
    if (name.rfind("random:", 0) == 0)
        return field_random_trig(dim, std::stoull(name.substr(7)));
    if (name.rfind("poly:", 0) == 0) {
        // c0, then dim linear coefficients, then the time coefficient, then
        // optional dim quadratic coefficients (x_a^2)
        std::vector<double> c;
        std::string tok;
        for (char ch : name.substr(5) + ",") {
            if (ch == ',') {
                if (!tok.empty()) c.push_back(std::stod(tok));
                tok.clear();
            } else {
                tok += ch;
            }
        }
        if (static_cast<int>(c.size()) < dim + 2)
            throw std::invalid_argument("field_by_name: poly needs 1+dim+1 coefficients");
        return [c, dim](const SpaceTimePoint& p) {
            double v = c[0] + c[dim + 1] * p.t;
            for (int a = 0; a < dim; ++a) {
                v += c[1 + a] * p.x[a];
                if (static_cast<int>(c.size()) > dim + 2 + a) v += c[dim + 2 + a] * p.x[a] * p.x[a];
            }
            return v;
        };
    }
    throw std::invalid_argument("field_by_name: unknown field '" + name + "'");
}

std::vector<std::pair<std::string, FieldFn>> builtin_corpus(int dim, std::uint64_t seed) {
    std::vector<std::pair<std::string, FieldFn>> c;
    c.emplace_back("constant", field_constant(0.7));
    c.emplace_back("linear", field_linear({1.0, -0.5, 0.25}, 0.5, 0.1));
    c.emplace_back("sin_product", field_sin_product(dim));
    c.emplace_back("random_trig_a", field_random_trig(dim, seed * 2654435761u + 1));
    c.emplace_back("random_trig_b", field_random_trig(dim, seed * 2654435761u + 2));
    return c;
}

} // namespace holdervar
