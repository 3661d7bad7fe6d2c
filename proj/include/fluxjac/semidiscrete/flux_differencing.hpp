#pragma once

#include <span>
#include <vector>

#include "fluxjac/linalg/block_jacobian.hpp"
#include "fluxjac/linalg/sparse_operator.hpp"

namespace fluxjac {

// Solution layout is field-major: dof index = field * n_nodes + node.

// out[field, i] += scale * sum_j Q_ij * flux(u_i, u_j)[field], evaluated
// only on stored nonzeros.  For skew Q the symmetric two-point flux is
// evaluated once per unordered pair.  `flux(a, b, out)` takes node states.
template <class T, class FluxFn>
void add_hadamard_residual(const SparseOperator& q, int n_fields, std::span<const T> u,
                           double scale, FluxFn&& flux, std::span<T> out) {
    const int n = q.rows();
    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    const auto& vals = q.values();
    std::vector<T> ua(n_fields), ub(n_fields), f(n_fields);
    const bool skew = q.symmetry() == Symmetry::skew;

    for (int a = 0; a < n; ++a) {
        for (int fi = 0; fi < n_fields; ++fi) ua[fi] = u[fi * n + a];
        for (int k = rp[a]; k < rp[a + 1]; ++k) {
            const int b = ci[k];
            if (skew && b < a) continue;  // mirrored below
            for (int fi = 0; fi < n_fields; ++fi) ub[fi] = u[fi * n + b];
            flux(std::span<const T>(ua), std::span<const T>(ub), std::span<T>(f));
            const double w = scale * vals[k];
            if (skew && b != a) {
                for (int fi = 0; fi < n_fields; ++fi) {
                    out[fi * n + a] += w * f[fi];
                    out[fi * n + b] -= w * f[fi];
                }
            } else {
                for (int fi = 0; fi < n_fields; ++fi) out[fi * n + a] += w * f[fi];
            }
        }
    }
}

enum class JacobianVariant { right_arg, left_arg };

// Accumulation buffer for block-Jacobian assembly.
struct BlockTriplets {
    int n_fields = 0;
    int n_nodes = 0;
    std::vector<std::vector<Triplet>> trip;  // one list per (i, j) block

    BlockTriplets(int fields, int nodes) : n_fields(fields), n_nodes(nodes) {
        trip.resize(static_cast<std::size_t>(fields) * fields);
    }
    std::vector<Triplet>& at(int i, int j) { return trip[i * n_fields + j]; }

    BlockJacobian build() const {
        BlockJacobian jac(n_fields, n_nodes);
        for (int i = 0; i < n_fields * n_fields; ++i)
            jac.blocks[i] = SparseOperator::from_triplets(
                n_nodes, n_nodes, trip[i], Symmetry::general);
        return jac;
    }
};

// Hadamard-structured Jacobian accumulation: for the right_arg variant,
//   block(i,j) += scale * off_sign * (Q o Fy^{(i,j)})
//              + scale * diag_sign * diag(1^T (Q o Fy^{(i,j)})),
// with Fy the per-pair flux Jacobian in the second argument; the left_arg
// variant uses the first-argument Jacobian, placing contributions at the
// transposed entry and accumulating row (rather than column) sums on the
// diagonal.  `jac_fn(a, b, g)` fills the row-major n x n block
// g[i*n_fields + j] = d flux_i / d u_{arg, j} at (u_a, u_b).
template <class JacFn>
void add_hadamard_jacobian(const SparseOperator& q, int n_fields, double scale,
                           double off_sign, double diag_sign, JacobianVariant variant,
                           JacFn&& jac_fn, BlockTriplets& out) {
    const int n = q.rows();
    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    const auto& vals = q.values();
    const double tag = q.symmetry() == Symmetry::skew ? -1.0 : 1.0;
    std::vector<double> g(static_cast<std::size_t>(n_fields) * n_fields);
    // diagonal corrections accumulate densely, then flush
    std::vector<std::vector<double>> diag(
        static_cast<std::size_t>(n_fields) * n_fields, std::vector<double>(n, 0.0));

    for (int a = 0; a < n; ++a) {
        for (int k = rp[a]; k < rp[a + 1]; ++k) {
            const int b = ci[k];
            const double w = scale * vals[k];
            jac_fn(a, b, std::span<double>(g));
            if (variant == JacobianVariant::right_arg) {
                for (int i = 0; i < n_fields; ++i) {
                    for (int j = 0; j < n_fields; ++j) {
                        const double v = w * g[i * n_fields + j];
                        if (v != 0.0) out.at(i, j).push_back({a, b, off_sign * v});
                        diag[i * n_fields + j][b] += diag_sign * v;
                    }
                }
            } else {
                // entry lands at (b, a) with the mirrored operator value
                const double wt = (a == b ? w : tag * w);
                for (int i = 0; i < n_fields; ++i) {
                    for (int j = 0; j < n_fields; ++j) {
                        const double v = g[i * n_fields + j];
                        if (v != 0.0)
                            out.at(i, j).push_back({b, a, off_sign * wt * v});
                        diag[i * n_fields + j][a] += diag_sign * w * v;
                    }
                }
            }
        }
    }
    for (int i = 0; i < n_fields; ++i)
        for (int j = 0; j < n_fields; ++j)
            for (int node = 0; node < n; ++node) {
                const double v = diag[i * n_fields + j][node];
                if (v != 0.0) out.at(i, j).push_back({node, node, v});
            }
}

// Matrix-free product of the same Jacobian terms (right_arg variant) with a
// vector w.  For a stored entry (a, b) both the off-diagonal entry at (a, b)
// and the diagonal correction at (b, b) multiply w values at node b.
template <class JacFn>
void add_hadamard_jacobian_product(const SparseOperator& q, int n_fields, double scale,
                                   double off_sign, double diag_sign, JacFn&& jac_fn,
                                   std::span<const double> w, std::span<double> out) {
    const int n = q.rows();
    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    const auto& vals = q.values();
    std::vector<double> g(static_cast<std::size_t>(n_fields) * n_fields);
    for (int a = 0; a < n; ++a) {
        for (int k = rp[a]; k < rp[a + 1]; ++k) {
            const int b = ci[k];
            const double wq = scale * vals[k];
            jac_fn(a, b, std::span<double>(g));
            for (int i = 0; i < n_fields; ++i) {
                double s = 0.0;
                for (int j = 0; j < n_fields; ++j) s += g[i * n_fields + j] * w[j * n + b];
                out[i * n + a] += off_sign * wq * s;
                out[i * n + b] += diag_sign * wq * s;
            }
        }
    }
}

}  // namespace fluxjac
