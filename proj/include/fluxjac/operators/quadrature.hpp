#pragma once

#include <utility>

#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

// Legendre-Gauss-Lobatto nodes and weights on [-1, 1], N+1 points.
std::pair<Vector, Vector> lobatto_nodes(int degree);

// n-point Legendre-Gauss rule, exact for polynomials of degree 2n - 1.
std::pair<Vector, Vector> gauss_nodes(int n);

// Vandermonde of the L2-orthonormal Legendre basis (and its derivative) at
// the given points, degree 0..N.
void legendre_vandermonde(const Vector& x, int degree, DenseMatrix& v, DenseMatrix& vx);

}  // namespace fluxjac
