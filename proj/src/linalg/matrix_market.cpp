#include "fluxjac/linalg/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>

#include "fluxjac/error.hpp"

namespace fluxjac {

namespace {

void write_header(std::ostream& os, int rows, int cols, int nnz) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << rows << " " << cols << " " << nnz << "\n";
}

}  // namespace

void export_matrix_market(const SparseOperator& a, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os << std::setprecision(17);
    write_header(os, a.rows(), a.cols(), a.nnz());
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (int r = 0; r < a.rows(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k)
            os << r + 1 << " " << ci[k] + 1 << " " << v[k] << "\n";
    if (!os) throw IoError("write failure on " + path);
}

void export_matrix_market(const DenseMatrix& a, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os << std::setprecision(17);
    int nnz = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) ++nnz;
    write_header(os, static_cast<int>(a.rows()), static_cast<int>(a.cols()), nnz);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) os << i + 1 << " " << j + 1 << " " << a(i, j) << "\n";
    if (!os) throw IoError("write failure on " + path);
}

}  // namespace fluxjac
