#pragma once

#include "fluxjac/autodiff/dual.hpp"
#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

// Dense scalar kernels used by the timing harness: r(u) = (Q o F) 1 with
// the Burgers two-point flux and its Jacobian by the closed-form formula,
// all outputs preallocated.  Q is a dense skew matrix.

inline void bench_residual_burgers(const DenseMatrix& q, const double* u, double* r) {
    const int n = static_cast<int>(q.rows());
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double ui = u[i];
        for (int j = 0; j < n; ++j) {
            const double uj = u[j];
            acc += q(i, j) * ((ui * ui + uj * uj + ui * uj) * (1.0 / 6.0));
        }
        r[i] = acc;
    }
}

// Closed-form Jacobian (Q o Fy) - diag(1^T (Q o Fy)) for skew Q, with the
// flux derivative either analytic or through a one-tangent dual number.
// Column sums accumulate during the row sweep.
template <bool UseAd>
inline void bench_jacobian_burgers(const DenseMatrix& q, const double* u, DenseMatrix& jac,
                                   double* colsum) {
    const int n = static_cast<int>(q.rows());
    for (int j = 0; j < n; ++j) colsum[j] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ui = u[i];
        for (int j = 0; j < n; ++j) {
            double dfdy;
            if constexpr (UseAd) {
                const Dual<1> f =
                    (Dual<1>(ui) * Dual<1>(ui) + Dual<1>::seeded(u[j], 0) * Dual<1>::seeded(u[j], 0) +
                     Dual<1>(ui) * Dual<1>::seeded(u[j], 0)) *
                    (1.0 / 6.0);
                dfdy = f.dot[0];
            } else {
                dfdy = (ui + 2.0 * u[j]) * (1.0 / 6.0);
            }
            const double v = q(i, j) * dfdy;
            jac(i, j) = v;
            colsum[j] += v;
        }
    }
    for (int j = 0; j < n; ++j) jac(j, j) -= colsum[j];
}

// AD applied directly to the residual: one dual pass per column.
inline void bench_ad_jacobian_burgers(const DenseMatrix& q, const double* u,
                                      DenseMatrix& jac) {
    const int n = static_cast<int>(q.rows());
    std::vector<Dual<1>> ud(n);
    for (int i = 0; i < n; ++i) ud[i] = Dual<1>(u[i]);
    for (int col = 0; col < n; ++col) {
        ud[col].dot[0] = 1.0;
        for (int i = 0; i < n; ++i) {
            Dual<1> acc(0.0);
            for (int j = 0; j < n; ++j) {
                acc += q(i, j) * ((ud[i] * ud[i] + ud[j] * ud[j] + ud[i] * ud[j]) *
                                  (1.0 / 6.0));
            }
            jac(i, col) = acc.dot[0];
        }
        ud[col].dot[0] = 0.0;
    }
}

// Central finite differences on the residual.
inline void bench_fd_jacobian_burgers(const DenseMatrix& q, const double* u,
                                      DenseMatrix& jac, double* work_p, double* work_m,
                                      double* up) {
    const int n = static_cast<int>(q.rows());
    const double eps_rel = 6.055454452393343e-06;  // cbrt(machine epsilon)
    for (int i = 0; i < n; ++i) up[i] = u[i];
    for (int col = 0; col < n; ++col) {
        const double h = eps_rel * (std::abs(u[col]) > 1.0 ? std::abs(u[col]) : 1.0);
        up[col] = u[col] + h;
        bench_residual_burgers(q, up, work_p);
        up[col] = u[col] - h;
        bench_residual_burgers(q, up, work_m);
        up[col] = u[col];
        for (int i = 0; i < n; ++i) jac(i, col) = (work_p[i] - work_m[i]) / (2.0 * h);
    }
}

}  // namespace fluxjac
