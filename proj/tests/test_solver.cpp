#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holdervar/experiments.hpp"
#include "holdervar/fields.hpp"
#include "holdervar/solver.hpp"

using namespace holdervar;

TEST_SUITE_BEGIN("solver");

namespace {

// manufactured solution u* = e^{-t} prod sin(pi x_a) of the heat equation
Closure manufactured_u(int dim) { return field_sin_product(dim); }

Closure manufactured_f(int dim) {
    return [dim](const SpaceTimePoint& p) {
        double u = std::exp(-p.t);
        for (int a = 0; a < dim; ++a) u *= std::sin(std::numbers::pi * p.x[a]);
        return (-1.0 + dim * std::numbers::pi * std::numbers::pi) * u;
    };
}

std::shared_ptr<const GridDomain> unit_box(int dim, int nx, int nt, double T = 0.5) {
    return make_box_domain(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0), T, nx,
                           nt);
}

double sup_error(const GridFunction& u, const Closure& exact) {
    double e = 0.0;
    for (int id : u.dom().cylinder_nodes())
        e = std::max(e, std::abs(u.at(id) - exact(u.dom().node_point(id))));
    return e;
}

} // namespace

TEST_CASE("zero data produces the zero solution") {
    auto dom = unit_box(1, 17, 16);
    const SolveResult r = fd_solve(make_heat_problem(dom, field_zero(), field_zero()));
    for (int id : dom->cylinder_nodes()) CHECK(r.u.at(id) == 0.0);
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("boundary values are carried exactly") {
    auto dom = unit_box(1, 17, 8);
    const Closure phi = [](const SpaceTimePoint& p) { return 1.0 + p.x[0] + p.t; };
    const SolveResult r = fd_solve(make_heat_problem(dom, field_zero(), phi));
    for (int id : dom->cylinder_nodes())
        if (dom->on_parabolic_boundary(id))
            CHECK(r.u.at(id) == phi(dom->node_point(id)));
}

TEST_CASE("manufactured convergence, 1d") {
    std::vector<double> errs;
    for (int nx : {9, 17, 33}) {
        const double h = 1.0 / (nx - 1);
        const int nt = std::max(2, static_cast<int>(std::lround(0.5 / (h * h))));
        auto dom = unit_box(1, nx, nt);
        const SolveResult r = fd_solve(make_heat_problem(dom, manufactured_f(1), manufactured_u(1)));
        errs.push_back(sup_error(r.u, manufactured_u(1)));
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 0.9);
    CHECK(std::log2(errs[1] / errs[2]) >= 0.9);
}

TEST_CASE("manufactured convergence, 2d") {
    std::vector<double> errs;
    for (int nx : {9, 17}) {
        const double h = 1.0 / (nx - 1);
        const int nt = std::max(2, static_cast<int>(std::lround(0.25 / (h * h))));
        auto dom = unit_box(2, nx, nt, 0.25);
        const SolveResult r = fd_solve(make_heat_problem(dom, manufactured_f(2), manufactured_u(2)));
        errs.push_back(sup_error(r.u, manufactured_u(2)));
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 0.9);
}

TEST_CASE("3d sanity solve") {
    auto dom = unit_box(3, 7, 8, 0.1);
    const SolveResult r = fd_solve(make_heat_problem(dom, manufactured_f(3), manufactured_u(3)));
    CHECK(r.iterations > 0);
    CHECK(sup_error(r.u, manufactured_u(3)) < 0.05);
}

TEST_CASE("discrete maximum principle on random monotone problems") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(0.5, 2.0), conv(-3.0, 3.0), reac(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        auto dom = unit_box(1, 17, 16, 0.6);
        const double a0 = coef(rng), b0 = conv(rng), c0 = reac(rng);
        std::array<Closure, 9> a;
        a[0] = [a0](const SpaceTimePoint& p) { return a0 * (1.0 + 0.3 * std::sin(p.x[0])); };
        std::array<Closure, 3> b;
        b[0] = [b0](const SpaceTimePoint& p) { return b0 * std::cos(2.0 * p.x[0] + p.t); };
        const Closure c = [c0](const SpaceTimePoint& p) { return c0 * (1.0 + 0.5 * p.t); };
        const Closure f = field_random_trig(1, 400 + trial);
        const Closure phi = field_random_trig(1, 500 + trial);
        const ParabolicProblem p =
            make_problem(dom, a, b, c, f, phi, 0.5 * a0, 10.0, /*existence_mode=*/true);
        const SolveResult r = fd_solve(p);

        double sup_u = 0.0, sup_f = 0.0, sup_phi = 0.0;
        for (int id : dom->cylinder_nodes()) {
            sup_u = std::max(sup_u, std::abs(r.u.at(id)));
            sup_f = std::max(sup_f, std::abs(p.f.at(id)));
            if (dom->on_parabolic_boundary(id))
                sup_phi = std::max(sup_phi, std::abs(p.phi.at(id)));
        }
        // C_mp = T for the monotone backward-Euler scheme
        CHECK(sup_u <= dom->T() * sup_f + sup_phi + 1e-10);
    }
}

TEST_CASE("determinism and linearity of the solve") {
    auto dom = unit_box(2, 9, 8, 0.25);
    const ParabolicProblem p = make_heat_problem(dom, manufactured_f(2), manufactured_u(2));
    const SolveResult r1 = fd_solve(p);
    const SolveResult r2 = fd_solve(p);
    for (int id : dom->cylinder_nodes()) CHECK(r1.u.at(id) == r2.u.at(id));

    const ParabolicProblem pf = make_heat_problem(dom, manufactured_f(2), field_zero());
    const ParabolicProblem pg =
        make_heat_problem(dom, field_random_trig(2, 7), field_zero());
    const ParabolicProblem psum = make_heat_problem(
        dom,
        [&](const SpaceTimePoint& q) { return pf.f.eval(q) + pg.f.eval(q); },
        field_zero());
    const SolveResult rf = fd_solve(pf), rg = fd_solve(pg), rs = fd_solve(psum);
    double scale = 0.0, diff = 0.0;
    for (int id : dom->cylinder_nodes()) {
        scale = std::max(scale, std::abs(rs.u.at(id)));
        diff = std::max(diff, std::abs(rs.u.at(id) - rf.u.at(id) - rg.u.at(id)));
    }
    CHECK(diff <= 1e-8 * std::max(scale, 1.0));
}

TEST_CASE("corner compatibility is advisory") {
    SUBCASE("compatible manufactured data raises no warning") {
        auto dom = unit_box(1, 17, 64);
        const SolveResult r =
            fd_solve(make_heat_problem(dom, manufactured_f(1), manufactured_u(1)));
        CHECK_FALSE(r.compatibility_warning);
        CHECK(r.compatibility_residual < 1.0);
    }
    SUBCASE("incompatible data is flagged but still solved") {
        auto dom = unit_box(1, 17, 64);
        const SolveResult r = fd_solve(make_heat_problem(dom, field_constant(1.0), field_zero()));
        CHECK(r.compatibility_warning);
        CHECK(r.compatibility_residual == doctest::Approx(1.0));
    }
}

TEST_CASE("ellipticity violation is rejected") {
    auto dom = unit_box(1, 9, 4);
    std::array<Closure, 9> a;
    a[0] = [](const SpaceTimePoint& p) { return 0.1 + 0.05 * p.x[0]; }; // below lambda = 1
    std::array<Closure, 3> b;
    b[0] = field_zero();
    const ParabolicProblem p = make_problem(dom, a, b, field_zero(), field_zero(), field_zero(),
                                            1.0, 2.0);
    CHECK_THROWS_AS(fd_solve(p), std::invalid_argument);
}

TEST_CASE("green identity residual") {
    auto dom = unit_box(1, 11, 10, 0.5);
    SUBCASE("constants annihilate every term") {
        const GridFunction u = GridFunction::sample(dom, field_constant(2.0));
        const GridFunction v = GridFunction::sample(dom, field_constant(-1.0));
        CHECK(green_identity_check(u, v) <= 1e-14);
    }
    SUBCASE("space-quadratic, time-linear pairs are exact") {
        const GridFunction u =
            GridFunction::sample(dom, [](const SpaceTimePoint& p) { return p.x[0] * p.x[0]; });
        const GridFunction v =
            GridFunction::sample(dom, [](const SpaceTimePoint& p) { return p.t; });
        CHECK(green_identity_check(u, v) <= 1e-10);
    }
    SUBCASE("smooth pairs converge at second order") {
        std::vector<double> errs;
        for (int nx : {33, 65, 129}) {
            auto d2 = unit_box(1, nx, nx - 1, 0.5);
            const GridFunction u = GridFunction::sample(d2, field_random_trig(1, 1));
            const GridFunction v = GridFunction::sample(d2, field_random_trig(1, 2));
            errs.push_back(green_identity_check(u, v));
        }
        CHECK(std::log2(errs[0] / errs[1]) >= 1.9);
        CHECK(std::log2(errs[1] / errs[2]) >= 1.9);
    }
}

TEST_CASE("stability constants") {
    const VariableExponent alpha = VariableExponent::constant(0.5);
    SUBCASE("zero problem is vacuous") {
        auto dom = unit_box(1, 9, 8);
        const ParabolicProblem p = make_heat_problem(dom, field_zero(), field_zero());
        const SolveResult r = fd_solve(p);
        const SchauderReport rep = schauder_constant(p, r, alpha);
        CHECK(rep.vacuous);
    }
    SUBCASE("manufactured problem has finite constants") {
        auto dom = unit_box(1, 17, 64);
        const ParabolicProblem p = make_heat_problem(dom, manufactured_f(1), manufactured_u(1));
        const SolveResult r = fd_solve(p);
        const SchauderReport rep = schauder_constant(p, r, alpha);
        CHECK(std::isfinite(rep.C_global));
        CHECK(rep.C_global > 0.0);
        CHECK(std::isfinite(rep.C_interior));
        CHECK(std::isfinite(rep.C_boundary));
    }
}

TEST_CASE("frozen-coefficient view") {
    auto dom = unit_box(1, 11, 8);
    SUBCASE("heat operator gives F = f") {
        const ParabolicProblem p = make_heat_problem(dom, manufactured_f(1), manufactured_u(1));
        const SolveResult r = fd_solve(p);
        const DerivativeBundle du = finite_differences(r.u);
        const ParabolicProblem q =
            frozen_coefficient_view(p, make_point({0.5}, 0.25), r.u, du);
        for (int id : dom->cylinder_nodes())
            CHECK(q.f.at(id) == doctest::Approx(p.f.at(id)).epsilon(1e-12));
    }
    SUBCASE("constant coefficients give F = f - b Du - c u") {
        std::array<Closure, 9> a;
        a[0] = field_constant(1.0);
        std::array<Closure, 3> b;
        b[0] = field_constant(0.7);
        const ParabolicProblem p =
            make_problem(dom, a, b, field_constant(0.3), manufactured_f(1), field_zero(), 0.5,
                         5.0);
        const SolveResult r = fd_solve(p);
        const DerivativeBundle du = finite_differences(r.u);
        const ParabolicProblem q =
            frozen_coefficient_view(p, make_point({0.5}, 0.25), r.u, du);
        for (int id : dom->cylinder_nodes()) {
            const double expect =
                p.f.at(id) - 0.7 * du.grad_at(id, 0) - 0.3 * r.u.at(id);
            CHECK(q.f.at(id) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("variable coefficients match an independent reassembly") {
        std::array<Closure, 9> a;
        a[0] = [](const SpaceTimePoint& p) { return 1.0 + 0.4 * std::sin(3.0 * p.x[0]); };
        std::array<Closure, 3> b;
        b[0] = [](const SpaceTimePoint& p) { return 0.5 * std::cos(p.t); };
        const Closure c = [](const SpaceTimePoint& p) { return 0.2 + 0.1 * p.x[0]; };
        const ParabolicProblem p =
            make_problem(dom, a, b, c, manufactured_f(1), field_zero(), 0.5, 5.0);
        const SolveResult r = fd_solve(p);
        const DerivativeBundle du = finite_differences(r.u);
        const SpaceTimePoint P = make_point({0.3}, 0.375);
        const ParabolicProblem q = frozen_coefficient_view(p, P, r.u, du);
        const double aP = 1.0 + 0.4 * std::sin(3.0 * P.x[0]);
        for (int id : dom->cylinder_nodes()) {
            const SpaceTimePoint X = dom->node_point(id);
            const double expect = (aP - (1.0 + 0.4 * std::sin(3.0 * X.x[0]))) *
                                      du.hess_at(id, 0, 0) -
                                  0.5 * std::cos(X.t) * du.grad_at(id, 0) -
                                  (0.2 + 0.1 * X.x[0]) * r.u.at(id) + p.f.at(id);
            CHECK(q.f.at(id) == doctest::Approx(expect).epsilon(1e-12));
        }
        CHECK(q.amat(0, 0).at(dom->cylinder_nodes()[0]) == doctest::Approx(aP));
    }
}

TEST_CASE("interior estimate probe stays bounded on the manufactured corpus") {
    const VariableExponent alpha = VariableExponent::constant(0.5);
    // several probe tops and radii, heat operator with two data sets
    const SpaceTimePoint tops[] = {make_point({0.5}, 0.375), make_point({0.25}, 0.25),
                                   make_point({0.75}, 0.4375)};
    for (int variant = 0; variant < 2; ++variant) {
        std::vector<double> worst;
        for (int nx : {17, 33}) {
            const double h = 1.0 / (nx - 1);
            const int nt = std::max(2, static_cast<int>(std::lround(0.5 / (h * h))));
            auto dom = unit_box(1, nx, nt);
            const ParabolicProblem p =
                variant == 0
                    ? make_heat_problem(dom, manufactured_f(1), manufactured_u(1))
                    : make_heat_problem(
                          dom,
                          [](const SpaceTimePoint& q) {
                              // u* = (1+t^2) cos x solves u_t - u_xx = (1+t)^2 cos x
                              return (1.0 + q.t) * (1.0 + q.t) * std::cos(q.x[0]);
                          },
                          [](const SpaceTimePoint& q) {
                              return (1.0 + q.t * q.t) * std::cos(q.x[0]);
                          });
            const SolveResult r = fd_solve(p);
            const DerivativeBundle du = finite_differences(r.u);
            double wc = 0.0;
            for (const auto& P : tops) {
                for (double dd : {0.2, 0.25}) {
                    const auto probe = interior_estimate_probe(r.u, du, p.f, alpha, P, dd);
                    CHECK(probe.semicube_nodes > 0);
                    CHECK(std::isfinite(probe.C));
                    wc = std::max(wc, probe.C);
                }
            }
            worst.push_back(wc);
        }
        // refinement-stable: no blow-up between levels
        CHECK(worst[1] <= 2.0 * worst[0] + 1.0);
    }
}

TEST_SUITE_END();
