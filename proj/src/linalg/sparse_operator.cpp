#include "fluxjac/linalg/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace fluxjac {

SparseOperator SparseOperator::from_triplets(int rows, int cols,
                                             std::vector<Triplet> triplets,
                                             Symmetry sym) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw DimensionError("triplet index out of range");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseOperator op;
    op.rows_ = rows;
    op.cols_ = cols;
    op.sym_ = sym;
    op.row_ptr_.assign(rows + 1, 0);

    std::size_t i = 0;
    while (i < triplets.size()) {
        int r = triplets[i].row, c = triplets[i].col;
        double v = 0.0;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
            v += triplets[i].value;
            ++i;
        }
        if (v != 0.0) {
            op.col_idx_.push_back(c);
            op.vals_.push_back(v);
            ++op.row_ptr_[r + 1];
        }
    }
    for (int r = 0; r < rows; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];

    op.build_csc();
    op.build_dense_mirror();
    op.validate_tag();
    return op;
}

SparseOperator SparseOperator::from_dense(const DenseMatrix& a, Symmetry sym) {
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) trip.push_back({i, j, a(i, j)});
    return from_triplets(static_cast<int>(a.rows()), static_cast<int>(a.cols()),
                         std::move(trip), sym);
}

SparseOperator SparseOperator::with_pattern_of(const SparseOperator& like,
                                               std::vector<double> values,
                                               Symmetry sym) {
    if (values.size() != like.vals_.size())
        throw DimensionError("value count does not match pattern");
    SparseOperator op;
    op.rows_ = like.rows_;
    op.cols_ = like.cols_;
    op.sym_ = sym;
    op.row_ptr_ = like.row_ptr_;
    op.col_idx_ = like.col_idx_;
    op.vals_ = std::move(values);
    op.col_ptr_ = like.col_ptr_;
    op.row_idx_ = like.row_idx_;
    op.csc_to_csr_ = like.csc_to_csr_;
    op.build_dense_mirror();
    op.validate_tag();
    return op;
}

void SparseOperator::build_csc() {
    col_ptr_.assign(cols_ + 1, 0);
    row_idx_.assign(vals_.size(), 0);
    csc_to_csr_.assign(vals_.size(), 0);
    for (int c : col_idx_) ++col_ptr_[c + 1];
    for (int c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
    std::vector<int> next(col_ptr_.begin(), col_ptr_.end() - 1);
    for (int r = 0; r < rows_; ++r) {
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            int c = col_idx_[k];
            int slot = next[c]++;
            row_idx_[slot] = r;
            csc_to_csr_[slot] = k;
        }
    }
}

void SparseOperator::build_dense_mirror() {
    if (rows_ > kDenseMirrorLimit || cols_ > kDenseMirrorLimit) return;
    dense_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            dense_[static_cast<std::size_t>(r) * cols_ + col_idx_[k]] = vals_[k];
}

void SparseOperator::validate_tag() const {
    if (sym_ == Symmetry::general) return;
    if (rows_ != cols_) throw DimensionError("tagged operator must be square");
    double scale = 0.0;
    for (double v : vals_) scale = std::max(scale, std::abs(v));
    const double tol = 1e-14 * std::max(scale, 1.0);
    for (int r = 0; r < rows_; ++r) {
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            double vt = value_at(col_idx_[k], r);
            double expect = sym_ == Symmetry::skew ? -vals_[k] : vals_[k];
            if (std::abs(vt - expect) > tol)
                throw Error("operator does not satisfy its declared symmetry tag");
        }
    }
}

double SparseOperator::value_at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionError("index out of range");
    const int lo = row_ptr_[i], hi = row_ptr_[i + 1];
    auto it = std::lower_bound(col_idx_.begin() + lo, col_idx_.begin() + hi, j);
    if (it != col_idx_.begin() + hi && *it == j)
        return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
    return 0.0;
}

DenseMatrix SparseOperator::to_dense() const {
    DenseMatrix a = DenseMatrix::Zero(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) a(r, col_idx_[k]) = vals_[k];
    return a;
}

SparseOperator SparseOperator::transposed() const {
    std::vector<Triplet> trip;
    trip.reserve(vals_.size());
    for (int r = 0; r < rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            trip.push_back({col_idx_[k], r, vals_[k]});
    return from_triplets(cols_, rows_, std::move(trip), sym_);
}

std::vector<double> SparseOperator::row_sums() const {
    std::vector<double> s(rows_, 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s[r] += vals_[k];
    return s;
}

std::vector<double> SparseOperator::col_sums() const {
    std::vector<double> s(cols_, 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s[col_idx_[k]] += vals_[k];
    return s;
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw DimensionError("matrix-vector dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += vals_[k] * x[col_idx_[k]];
        y[r] = acc;
    }
    return y;
}

}  // namespace fluxjac
