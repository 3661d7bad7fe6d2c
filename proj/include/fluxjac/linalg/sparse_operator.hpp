#pragma once

#include <vector>

#include "fluxjac/error.hpp"
#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

enum class Symmetry { skew, symmetric, general };

struct Triplet {
    int row;
    int col;
    double value;
};

// Sparse real matrix in compressed-row form with a companion
// compressed-column view, carrying a declared symmetry tag.  The tag is
// validated at construction: a skew operator satisfies A + A^T = 0 on its
// stored pattern, a symmetric one A = A^T.  Matrices with at most
// kDenseMirrorLimit rows and columns also keep a row-major dense mirror
// which the Hadamard kernels use as a fast path.
class SparseOperator {
public:
    static constexpr int kDenseMirrorLimit = 256;

    SparseOperator() = default;

    // Duplicate triplets are summed; exact zeros are dropped afterwards.
    static SparseOperator from_triplets(int rows, int cols,
                                        std::vector<Triplet> triplets,
                                        Symmetry sym);
    static SparseOperator from_dense(const DenseMatrix& a, Symmetry sym);

    // Same stored pattern as `like`, new values in CSR order.
    static SparseOperator with_pattern_of(const SparseOperator& like,
                                          std::vector<double> values,
                                          Symmetry sym = Symmetry::general);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(vals_.size()); }
    Symmetry symmetry() const { return sym_; }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }

    const std::vector<int>& col_ptr() const { return col_ptr_; }
    const std::vector<int>& row_idx() const { return row_idx_; }
    // Maps each CSC slot to its CSR value slot.
    const std::vector<int>& csc_to_csr() const { return csc_to_csr_; }

    bool has_dense_mirror() const { return !dense_.empty(); }
    // Row-major mirror; only valid when has_dense_mirror().
    const std::vector<double>& dense_mirror() const { return dense_; }

    // Value at (i, j); zero if the entry is not stored.
    double value_at(int i, int j) const;

    DenseMatrix to_dense() const;
    SparseOperator transposed() const;

    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;

    // A*x for plain matrix-vector products.
    std::vector<double> apply(const std::vector<double>& x) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    Symmetry sym_ = Symmetry::general;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<double> vals_;
    std::vector<int> col_ptr_;
    std::vector<int> row_idx_;
    std::vector<int> csc_to_csr_;
    std::vector<double> dense_;

    void build_csc();
    void build_dense_mirror();
    void validate_tag() const;
};

}  // namespace fluxjac
