#pragma once

#include <thread>
#include <vector>

#include "fluxjac/linalg/sparse_operator.hpp"

namespace fluxjac {

enum class KernelSymmetry { general, symmetric };

// result_i = sum_j Q_ij * kernel(i, j), summing only stored nonzeros.
//
// When Q is tagged skew and the kernel is declared symmetric, each unordered
// pair is evaluated once and accumulated with opposite signs (the default).
// Pass paired = false to force the plain per-row traversal.
template <class Kernel>
std::vector<double> hadamard_row_sum(const SparseOperator& q, Kernel&& kernel,
                                     KernelSymmetry ksym = KernelSymmetry::general,
                                     bool paired = true) {
    const int n = q.rows();
    std::vector<double> r(n, 0.0);
    const bool use_pairs =
        paired && q.symmetry() == Symmetry::skew && ksym == KernelSymmetry::symmetric;

    if (q.has_dense_mirror()) {
        const double* a = q.dense_mirror().data();
        const int m = q.cols();
        if (use_pairs) {
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                const double* row = a + static_cast<std::size_t>(i) * m;
                for (int j = i + 1; j < m; ++j) {
                    const double qij = row[j];
                    if (qij == 0.0) continue;
                    const double f = kernel(i, j);
                    acc += qij * f;
                    r[j] -= qij * f;
                }
                r[i] += acc;
            }
        } else {
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                const double* row = a + static_cast<std::size_t>(i) * m;
                for (int j = 0; j < m; ++j) {
                    if (row[j] == 0.0) continue;
                    acc += row[j] * kernel(i, j);
                }
                r[i] = acc;
            }
        }
        return r;
    }

    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    const auto& v = q.values();
    if (use_pairs) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int k = rp[i]; k < rp[i + 1]; ++k) {
                const int j = ci[k];
                if (j <= i) continue;
                const double f = kernel(i, j);
                acc += v[k] * f;
                r[j] -= v[k] * f;
            }
            r[i] += acc;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int k = rp[i]; k < rp[i + 1]; ++k) acc += v[k] * kernel(i, ci[k]);
            r[i] = acc;
        }
    }
    return r;
}

// Row-partitioned variant. Uses the plain per-row traversal so each worker
// owns its rows outright; the accumulation order within a row matches the
// serial path, so results are bit-identical for any worker count.
template <class Kernel>
std::vector<double> hadamard_row_sum_parallel(const SparseOperator& q, Kernel&& kernel,
                                              int n_threads) {
    const int n = q.rows();
    if (n_threads <= 1 || n < 2)
        return hadamard_row_sum(q, kernel, KernelSymmetry::general, false);

    std::vector<double> r(n, 0.0);
    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    const auto& v = q.values();
    auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            double acc = 0.0;
            for (int k = rp[i]; k < rp[i + 1]; ++k) acc += v[k] * kernel(i, ci[k]);
            r[i] = acc;
        }
    };
    std::vector<std::thread> pool;
    const int chunk = (n + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        int lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return r;
}

// Entry (i, j) = Q_ij * kernel(i, j) on exactly Q's stored pattern.
template <class Kernel>
SparseOperator hadamard_scale(const SparseOperator& q, Kernel&& kernel) {
    std::vector<double> vals(q.values());
    const auto& rp = q.row_ptr();
    const auto& ci = q.col_idx();
    for (int i = 0; i < q.rows(); ++i)
        for (int k = rp[i]; k < rp[i + 1]; ++k) vals[k] *= kernel(i, ci[k]);
    return SparseOperator::with_pattern_of(q, std::move(vals));
}

}  // namespace fluxjac
