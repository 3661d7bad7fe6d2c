#include "fluxjac/linalg/block_jacobian.hpp"

namespace fluxjac {

BlockJacobian::BlockJacobian(int fields, int nodes) : n_fields(fields), n_nodes(nodes) {
    blocks.assign(static_cast<std::size_t>(fields) * fields,
                  SparseOperator::from_triplets(nodes, nodes, {}, Symmetry::general));
}

SparseOperator BlockJacobian::flatten() const {
    std::vector<Triplet> trip;
    std::size_t total = 0;
    for (const auto& b : blocks) total += static_cast<std::size_t>(b.nnz());
    trip.reserve(total);
    for (int bi = 0; bi < n_fields; ++bi) {
        for (int bj = 0; bj < n_fields; ++bj) {
            const auto& b = block(bi, bj);
            if (b.rows() != n_nodes || b.cols() != n_nodes)
                throw DimensionError("block dimension mismatch");
            const auto& rp = b.row_ptr();
            const auto& ci = b.col_idx();
            const auto& v = b.values();
            for (int r = 0; r < b.rows(); ++r)
                for (int k = rp[r]; k < rp[r + 1]; ++k)
                    trip.push_back({bi * n_nodes + r, bj * n_nodes + ci[k], v[k]});
        }
    }
    return SparseOperator::from_triplets(n_fields * n_nodes, n_fields * n_nodes,
                                         std::move(trip), Symmetry::general);
}

DenseMatrix BlockJacobian::to_dense() const { return flatten().to_dense(); }

BlockJacobian to_blocks(const SparseOperator& flat, int n_fields) {
    if (flat.rows() != flat.cols() || flat.rows() % n_fields != 0)
        throw DimensionError("flat matrix not divisible into field blocks");
    const int n = flat.rows() / n_fields;
    std::vector<std::vector<Triplet>> trip(static_cast<std::size_t>(n_fields) * n_fields);
    const auto& rp = flat.row_ptr();
    const auto& ci = flat.col_idx();
    const auto& v = flat.values();
    for (int r = 0; r < flat.rows(); ++r) {
        const int bi = r / n;
        for (int k = rp[r]; k < rp[r + 1]; ++k) {
            const int bj = ci[k] / n;
            trip[static_cast<std::size_t>(bi) * n_fields + bj].push_back(
                {r - bi * n, ci[k] - bj * n, v[k]});
        }
    }
    BlockJacobian out(n_fields, n);
    for (int i = 0; i < n_fields * n_fields; ++i)
        out.blocks[i] = SparseOperator::from_triplets(n, n, std::move(trip[i]),
                                                      Symmetry::general);
    return out;
}

}  // namespace fluxjac
