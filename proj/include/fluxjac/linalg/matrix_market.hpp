#pragma once

#include <string>

#include "fluxjac/linalg/dense.hpp"
#include "fluxjac/linalg/sparse_operator.hpp"

namespace fluxjac {

// Matrix Market coordinate format (real, general), 1-based indices.
void export_matrix_market(const SparseOperator& a, const std::string& path);
void export_matrix_market(const DenseMatrix& a, const std::string& path);

}  // namespace fluxjac
