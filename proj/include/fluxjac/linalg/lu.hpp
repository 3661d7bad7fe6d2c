#pragma once

#include <memory>
#include <vector>

#include "fluxjac/linalg/dense.hpp"
#include "fluxjac/linalg/sparse_operator.hpp"

namespace fluxjac {

// Direct solver behind a single interface.  Small systems are factored with
// a dense partial-pivot LU; larger sparse systems go through Eigen's
// SparseLU.  A pivot whose magnitude falls below
// kPivotThreshold * max|A_ij| raises SingularMatrixError.
class LUFactorization {
public:
    static constexpr double kPivotThreshold = 1e-14;
    static constexpr int kDenseLimit = 512;

    static LUFactorization factor(const DenseMatrix& a);
    static LUFactorization factor(const SparseOperator& a);

    LUFactorization(LUFactorization&&) noexcept;
    LUFactorization& operator=(LUFactorization&&) noexcept;
    ~LUFactorization();

    std::vector<double> solve(const std::vector<double>& b) const;
    Vector solve(const Vector& b) const;

    int size() const { return n_; }

private:
    LUFactorization();
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
};

std::vector<double> lu_solve(const DenseMatrix& a, const std::vector<double>& b);
std::vector<double> lu_solve(const SparseOperator& a, const std::vector<double>& b);

}  // namespace fluxjac
