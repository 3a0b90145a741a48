#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "holdervar/geometry.hpp"

namespace holdervar {

/// Heat-kernel family. All kernels are functions of (x,t;y,s) with s > t.
///
///  - standard:  G = (s-t)^{-n/2} (2*sqrt(pi))^{-n} exp(-|x-y|_2^2 / (4(s-t)))
///  - reflected: G(x,t;y,s) - G(x,t;y*,s) with y* = (y_1,..,y_{n-1}, 2*dbar - y_n);
///    vanishes on the plane y_n = dbar (method of images).
///  - anisotropic: det(A)^{1/2} (2*sqrt(pi))^{-n} (s-t)^{-n/2}
///                 exp(-sum_ij A_ij (x_i-y_i)(x_j-y_j) / (4(s-t))),
///    A symmetric positive definite with spectrum in [lambda, Lambda]. The
///    exponent matrix is the inverse of the diffusion matrix: this kernel
///    solves dK/ds = sum_ij (A^{-1})_ij d2K/dy_i dy_j.
struct KernelSpec {
    enum class Kind { standard, reflected, anisotropic };
    Kind kind = Kind::standard;
    int dim = 1;
    double reflect_height = 0.0;
    std::array<double, 9> aniso{}; // row-major dim x dim

    static KernelSpec standard(int n);
    static KernelSpec reflected(int n, double dbar);
    /// Validates symmetry and that the spectrum lies in [lambda, Lambda].
    static KernelSpec anisotropic(int n, const std::array<double, 9>& A, double lambda,
                                  double Lambda);

    double amat(int i, int j) const { return aniso[i * dim + j]; }
};

/// Multi-index of y-derivative orders; entries beyond dim must be zero.
using SpaceMulti = std::array<int, kMaxDim>;

inline int multi_total(const SpaceMulti& j) { return j[0] + j[1] + j[2]; }

/// Kernel value. Throws std::invalid_argument when s <= t.
double eval_kernel(const KernelSpec& spec, const SpaceTimePoint& xt, const SpaceTimePoint& ys);

/// Analytic derivative D_s^k D_y^j of the kernel, via precomputed
/// Hermite-style polynomial prefactor tables (no finite differences);
/// supports k + |j| <= 4.
double eval_kernel_derivative(const KernelSpec& spec, int k, const SpaceMulti& j,
                              const SpaceTimePoint& xt, const SpaceTimePoint& ys);

/// Translation-invariance view: derivative of order (kt in t, jx in x),
/// obtained from the (s, y) derivatives by D_t = -D_s and D_x = -D_y per
/// odd space order.
double eval_kernel_derivative_xt(const KernelSpec& spec, int kt, const SpaceMulti& jx,
                                 const SpaceTimePoint& xt, const SpaceTimePoint& ys);

/// Prefactor polynomial bound evaluator for one (spec, k, j). Reusable over
/// many points; building it once amortizes the symbolic differentiation.
class KernelDerivativeEval {
public:
    KernelDerivativeEval(const KernelSpec& spec, int k, const SpaceMulti& j);

    double value(const SpaceTimePoint& xt, const SpaceTimePoint& ys) const;

    /// |D_s^k D_y^j kernel| * (s-t)^{(n+2k+|j|)/2} * exp(+|x-y|_2^2/(5(s-t))),
    /// evaluated in fused form so the two exponentials combine stably.
    double bound_quotient(const SpaceTimePoint& xt, const SpaceTimePoint& ys) const;

private:
    struct Poly {
        // monomial exponents (u1,u2,u3,w) -> coefficient
        std::map<std::array<int, 4>, double> terms;
    };
    double poly_eval(const Poly& p, const std::array<double, 3>& u, double w) const;

    KernelSpec spec_;
    int k_ = 0;
    SpaceMulti j_{};
    Poly poly_;
    double det_sqrt_ = 1.0;
    double cn_ = 1.0; // (2 sqrt(pi))^{-n}
};

struct BoundMeasurement {
    double C = 0.0;
    int argmax = -1; // sample index
};

/// Measured constant for the derivative decay bound: sup over the sample of
/// bound_quotient. All samples must satisfy s > t.
BoundMeasurement verify_derivative_bound(const KernelSpec& spec, int k, const SpaceMulti& j,
                                         std::span<const std::pair<SpaceTimePoint, SpaceTimePoint>>
                                             samples);

/// Eigenvalues of a symmetric dim x dim matrix (cyclic Jacobi), ascending.
std::vector<double> sym_eigenvalues(const std::array<double, 9>& A, int dim);

} // namespace holdervar
