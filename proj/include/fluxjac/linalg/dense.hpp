#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fluxjac {

// Dense matrices are column-major with contiguous storage.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double frobenius(const DenseMatrix& a) { return a.norm(); }

inline Vector to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> to_std(const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace fluxjac
