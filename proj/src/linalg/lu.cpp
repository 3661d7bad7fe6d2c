#include "fluxjac/linalg/lu.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

namespace fluxjac {

namespace {

Eigen::SparseMatrix<double> to_eigen_sparse(const SparseOperator& a) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(a.nnz()));
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (int r = 0; r < a.rows(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k) trip.emplace_back(r, ci[k], v[k]);
    Eigen::SparseMatrix<double> m(a.rows(), a.cols());
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

// Dense LU with partial pivoting, row-permutation stored explicitly.
struct DenseLU {
    DenseMatrix lu;
    std::vector<int> perm;

    void factor(const DenseMatrix& a, double pivot_floor) {
        const int n = static_cast<int>(a.rows());
        lu = a;
        perm.resize(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            double best = std::abs(lu(k, k));
            for (int i = k + 1; i < n; ++i) {
                if (std::abs(lu(i, k)) > best) {
                    best = std::abs(lu(i, k));
                    piv = i;
                }
            }
            if (best < pivot_floor)
                throw SingularMatrixError("pivot below singularity threshold");
            if (piv != k) {
                lu.row(piv).swap(lu.row(k));
                std::swap(perm[piv], perm[k]);
            }
            for (int i = k + 1; i < n; ++i) {
                lu(i, k) /= lu(k, k);
                for (int j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
            }
        }
    }

    Vector solve(const Vector& b) const {
        const int n = static_cast<int>(lu.rows());
        Vector x(n);
        for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        return x;
    }
};

}  // namespace

struct LUFactorization::Impl {
    bool dense = true;
    DenseLU dlu;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> slu;
};

LUFactorization::LUFactorization() : impl_(std::make_unique<Impl>()) {}
LUFactorization::LUFactorization(LUFactorization&&) noexcept = default;
LUFactorization& LUFactorization::operator=(LUFactorization&&) noexcept = default;
LUFactorization::~LUFactorization() = default;

LUFactorization LUFactorization::factor(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
    LUFactorization f;
    f.n_ = static_cast<int>(a.rows());
    const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    f.impl_->dense = true;
    f.impl_->dlu.factor(a, kPivotThreshold * std::max(amax, 1e-300));
    return f;
}

LUFactorization LUFactorization::factor(const SparseOperator& a) {
    if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
    LUFactorization f;
    f.n_ = a.rows();
    if (a.rows() <= kDenseLimit) {
        return factor(a.to_dense());
    }
    f.impl_->dense = false;
    auto m = to_eigen_sparse(a);
    f.impl_->slu.compute(m);
    if (f.impl_->slu.info() != Eigen::Success)
        throw SingularMatrixError("sparse LU factorization failed");
    return f;
}

Vector LUFactorization::solve(const Vector& b) const {
    if (static_cast<int>(b.size()) != n_) throw DimensionError("rhs size mismatch");
    if (impl_->dense) return impl_->dlu.solve(b);
    Vector x = impl_->slu.solve(b);
    if (impl_->slu.info() != Eigen::Success)
        throw SingularMatrixError("sparse LU solve failed");
    return x;
}

std::vector<double> LUFactorization::solve(const std::vector<double>& b) const {
    return to_std(solve(Vector(to_eigen(b))));
}

std::vector<double> lu_solve(const DenseMatrix& a, const std::vector<double>& b) {
    return LUFactorization::factor(a).solve(b);
}

std::vector<double> lu_solve(const SparseOperator& a, const std::vector<double>& b) {
    return LUFactorization::factor(a).solve(b);
}

}  // namespace fluxjac
