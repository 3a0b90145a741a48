#include "holdervar/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holdervar {

namespace {

constexpr double kUnderflowExp = -700.0; // exp(arg) below this evaluates to exact 0

double cn_factor(int n) {
    // (2 sqrt(pi))^{-n}
    return std::pow(2.0 * std::sqrt(std::numbers::pi), -n);
}

void check_dim(const KernelSpec& spec, const SpaceTimePoint& xt, const SpaceTimePoint& ys) {
    if (xt.dim != spec.dim || ys.dim != spec.dim)
        throw std::invalid_argument("kernel: spatial dimension mismatch");
}

double quad_form(const KernelSpec& spec, const std::array<double, 3>& u) {
    if (spec.kind != KernelSpec::Kind::anisotropic) {
        double s = 0.0;
        for (int a = 0; a < spec.dim; ++a) s += u[a] * u[a];
        return s;
    }
    double s = 0.0;
    for (int a = 0; a < spec.dim; ++a)
        for (int b = 0; b < spec.dim; ++b) s += spec.amat(a, b) * u[a] * u[b];
    return s;
}

double det_nxn(const std::array<double, 9>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::array<double, 3> diff_vec(const SpaceTimePoint& xt, const SpaceTimePoint& ys) {
    std::array<double, 3> u{};
    for (int a = 0; a < xt.dim; ++a) u[a] = xt.x[a] - ys.x[a];
    return u;
}

SpaceTimePoint reflect_point(const KernelSpec& spec, const SpaceTimePoint& ys) {
    SpaceTimePoint r = ys;
    r.x[spec.dim - 1] = 2.0 * spec.reflect_height - ys.x[spec.dim - 1];
    return r;
}

double gaussian_kernel(int n, double det_sqrt, double q, double tau) {
    const double arg = -q / (4.0 * tau);
    if (arg < kUnderflowExp) return 0.0;
    return det_sqrt * cn_factor(n) * std::pow(tau, -0.5 * n) * std::exp(arg);
}

} // namespace

std::vector<double> sym_eigenvalues(const std::array<double, 9>& A, int dim) {
    std::array<double, 9> m = A;
    auto at = [&](int i, int j) -> double& { return m[i * dim + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                if (std::abs(at(p, q)) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * at(p, q), at(q, q) - at(p, p));
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < dim; ++k) {
                    const double mkp = at(k, p), mkq = at(k, q);
                    at(k, p) = c * mkp - s * mkq;
                    at(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < dim; ++k) {
                    const double mpk = at(p, k), mqk = at(q, k);
                    at(p, k) = c * mpk - s * mqk;
                    at(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(dim);
    for (int i = 0; i < dim; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

KernelSpec KernelSpec::standard(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("KernelSpec: dim out of range");
    KernelSpec s;
    s.kind = Kind::standard;
    s.dim = n;
    return s;
}

KernelSpec KernelSpec::reflected(int n, double dbar) {
    KernelSpec s = standard(n);
    s.kind = Kind::reflected;
    s.reflect_height = dbar;
    return s;
}

KernelSpec KernelSpec::anisotropic(int n, const std::array<double, 9>& A, double lambda,
                                   double Lambda) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("KernelSpec: dim out of range");
    if (!(lambda > 0.0) || Lambda < lambda)
        throw std::invalid_argument("KernelSpec: need 0 < lambda <= Lambda");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(A[i * n + j] - A[j * n + i]) > 1e-12)
                throw std::invalid_argument("KernelSpec: matrix must be symmetric");
    const auto ev = sym_eigenvalues(A, n);
    const double tol = 1e-9 * std::max(1.0, Lambda);
    if (ev.front() < lambda - tol || ev.back() > Lambda + tol)
        throw std::invalid_argument("KernelSpec: spectrum outside [lambda, Lambda]");
    KernelSpec s;
    s.kind = Kind::anisotropic;
    s.dim = n;
    s.aniso = A;
    return s;
}

double eval_kernel(const KernelSpec& spec, const SpaceTimePoint& xt, const SpaceTimePoint& ys) {
    check_dim(spec, xt, ys);
    const double tau = ys.t - xt.t;
    if (!(tau > 0.0)) throw std::invalid_argument("kernel: requires s > t");

    const double det_sqrt = spec.kind == KernelSpec::Kind::anisotropic
                                ? std::sqrt(det_nxn(spec.aniso, spec.dim))
                                : 1.0;
    const double g = gaussian_kernel(spec.dim, det_sqrt, quad_form(spec, diff_vec(xt, ys)), tau);
    if (spec.kind != KernelSpec::Kind::reflected) return g;

    const SpaceTimePoint ystar = reflect_point(spec, ys);
    return g - gaussian_kernel(spec.dim, 1.0, quad_form(spec, diff_vec(xt, ystar)), tau);
}

// ---------------------------------------------------------------------------
// Symbolic prefactor polynomials.
//
// Write the kernel as K = det^{1/2} c_n tau^{-n/2} exp(-q(u)/(4 tau)) with
// u = x - y and w = 1/tau. Derivatives act on a polynomial p(u, w) carried
// along K:
//   d/dy_i (K p) = K (-dp/du_i + (A u)_i w/2 * p)
//   d/ds   (K p) = K (-w^2 dp/dw + (-n w / 2 + q(u) w^2 / 4) p)

namespace {

using Key = std::array<int, 4>;

void add_term(std::map<Key, double>& terms, Key k, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms.erase(it);
    }
}

} // namespace

KernelDerivativeEval::KernelDerivativeEval(const KernelSpec& spec, int k, const SpaceMulti& j)
    : spec_(spec), k_(k), j_(j) {
    if (k < 0 || multi_total(j) < 0 || k + multi_total(j) > 4)
        throw std::invalid_argument("kernel derivative: supported orders are k+|j| <= 4");
    for (int a = spec.dim; a < kMaxDim; ++a)
        if (j[a] != 0) throw std::invalid_argument("kernel derivative: multi-index beyond dim");

    const int n = spec.dim;
    auto amat = [&](int a, int b) {
        return spec.kind == KernelSpec::Kind::anisotropic ? spec.amat(a, b)
                                                          : (a == b ? 1.0 : 0.0);
    };

    Poly p;
    p.terms[{0, 0, 0, 0}] = 1.0;

    auto apply_dy = [&](const Poly& in, int axis) {
        Poly out;
        for (const auto& [key, c] : in.terms) {
            // -dp/du_axis
            if (key[axis] > 0) {
                Key kk = key;
                kk[axis] -= 1;
                add_term(out.terms, kk, -c * key[axis]);
            }
            // + (A u)_axis * w/2 * p
            for (int b = 0; b < n; ++b) {
                const double a_ab = amat(axis, b);
                if (a_ab == 0.0) continue;
                Key kk = key;
                kk[b] += 1;
                kk[3] += 1;
                add_term(out.terms, kk, 0.5 * a_ab * c);
            }
        }
        return out;
    };

    auto apply_ds = [&](const Poly& in) {
        Poly out;
        for (const auto& [key, c] : in.terms) {
            // -w^2 dp/dw
            if (key[3] > 0) {
                Key kk = key;
                kk[3] += 1;
                add_term(out.terms, kk, -c * key[3]);
            }
            // -n/2 w p
            {
                Key kk = key;
                kk[3] += 1;
                add_term(out.terms, kk, -0.5 * n * c);
            }
            // q(u) w^2 / 4 p
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    const double a_ab = amat(a, b);
                    if (a_ab == 0.0) continue;
                    Key kk = key;
                    kk[a] += 1;
                    kk[b] += 1;
                    kk[3] += 2;
                    add_term(out.terms, kk, 0.25 * a_ab * c);
                }
            }
        }
        return out;
    };

    for (int a = 0; a < n; ++a)
        for (int rep = 0; rep < j[a]; ++rep) p = apply_dy(p, a);
    for (int rep = 0; rep < k; ++rep) p = apply_ds(p);

    poly_ = p;
    det_sqrt_ = spec.kind == KernelSpec::Kind::anisotropic
                    ? std::sqrt(det_nxn(spec.aniso, spec.dim))
                    : 1.0;
    cn_ = cn_factor(n);
}

double KernelDerivativeEval::poly_eval(const Poly& p, const std::array<double, 3>& u,
                                       double w) const {
    double acc = 0.0;
    for (const auto& [key, c] : p.terms) {
        double term = c;
        for (int a = 0; a < 3; ++a)
            for (int e = 0; e < key[a]; ++e) term *= u[a];
        for (int e = 0; e < key[3]; ++e) term *= w;
        acc += term;
    }
    return acc;
}

double KernelDerivativeEval::value(const SpaceTimePoint& xt, const SpaceTimePoint& ys) const {
    check_dim(spec_, xt, ys);
    const double tau = ys.t - xt.t;
    if (!(tau > 0.0)) throw std::invalid_argument("kernel derivative: requires s > t");
    const double w = 1.0 / tau;

    const auto u = diff_vec(xt, ys);
    const double base = gaussian_kernel(spec_.dim, det_sqrt_, quad_form(spec_, u), tau);
    double v = poly_eval(poly_, u, w) * base;

    if (spec_.kind == KernelSpec::Kind::reflected) {
        const SpaceTimePoint ystar = reflect_point(spec_, ys);
        const auto us = diff_vec(xt, ystar);
        const double bs = gaussian_kernel(spec_.dim, 1.0, quad_form(spec_, us), tau);
        const double sign = (j_[spec_.dim - 1] % 2 == 0) ? 1.0 : -1.0;
        v -= sign * poly_eval(poly_, us, w) * bs;
    }
    return v;
}

double KernelDerivativeEval::bound_quotient(const SpaceTimePoint& xt,
                                            const SpaceTimePoint& ys) const {
    check_dim(spec_, xt, ys);
    const double tau = ys.t - xt.t;
    if (!(tau > 0.0)) throw std::invalid_argument("kernel derivative: requires s > t");
    const double w = 1.0 / tau;

    const auto u = diff_vec(xt, ys);
    double r2 = 0.0;
    for (int a = 0; a < spec_.dim; ++a) r2 += u[a] * u[a];

    const double order_pow = std::pow(tau, 0.5 * (2 * k_ + multi_total(j_)));

    // exp(r^2/(5 tau)) * exp(-q(u)/(4 tau)) combined in one exponent
    auto fused = [&](const std::array<double, 3>& uu, double det_sqrt) {
        const double arg = (r2 / 5.0 - quad_form(spec_, uu) / 4.0) * w;
        const double e = arg < kUnderflowExp ? 0.0 : std::exp(arg);
        return poly_eval(poly_, uu, w) * det_sqrt * e;
    };

    double v = fused(u, det_sqrt_);
    if (spec_.kind == KernelSpec::Kind::reflected) {
        const SpaceTimePoint ystar = reflect_point(spec_, ys);
        const double sign = (j_[spec_.dim - 1] % 2 == 0) ? 1.0 : -1.0;
        v -= sign * fused(diff_vec(xt, ystar), 1.0);
    }
    return std::abs(v) * cn_ * order_pow;
}

double eval_kernel_derivative(const KernelSpec& spec, int k, const SpaceMulti& j,
                              const SpaceTimePoint& xt, const SpaceTimePoint& ys) {
    return KernelDerivativeEval(spec, k, j).value(xt, ys);
}

double eval_kernel_derivative_xt(const KernelSpec& spec, int kt, const SpaceMulti& jx,
                                 const SpaceTimePoint& xt, const SpaceTimePoint& ys) {
    if (spec.kind == KernelSpec::Kind::reflected)
        throw std::invalid_argument(
            "kernel derivative: x/t view is only translation-invariant for non-reflected kinds");
    const double sign_t = (kt % 2 == 0) ? 1.0 : -1.0;
    const double sign_x = (multi_total(jx) % 2 == 0) ? 1.0 : -1.0;
    return sign_t * sign_x * eval_kernel_derivative(spec, kt, jx, xt, ys);
}

BoundMeasurement verify_derivative_bound(
    const KernelSpec& spec, int k, const SpaceMulti& j,
    std::span<const std::pair<SpaceTimePoint, SpaceTimePoint>> samples) {
    const KernelDerivativeEval ev(spec, k, j);
    BoundMeasurement m;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double q = ev.bound_quotient(samples[i].first, samples[i].second);
        if (q > m.C) {
            m.C = q;
            m.argmax = static_cast<int>(i);
        }
    }
    return m;
}

} // namespace holdervar
