#pragma once

#include <vector>

#include "fluxjac/linalg/sparse_operator.hpp"

namespace fluxjac {

// n_fields x n_fields grid of sparse blocks, each of global-node dimension.
// The flattened matrix orders degrees of freedom field-major: global index
// field * n_nodes + node.
struct BlockJacobian {
    int n_fields = 0;
    int n_nodes = 0;
    std::vector<SparseOperator> blocks;  // row-major grid, n_fields^2 entries

    BlockJacobian() = default;
    BlockJacobian(int fields, int nodes);

    SparseOperator& block(int i, int j) { return blocks[i * n_fields + j]; }
    const SparseOperator& block(int i, int j) const { return blocks[i * n_fields + j]; }

    SparseOperator flatten() const;
    DenseMatrix to_dense() const;
};

// Inverse of flatten: slice a field-major square operator back into blocks.
BlockJacobian to_blocks(const SparseOperator& flat, int n_fields);

}  // namespace fluxjac
