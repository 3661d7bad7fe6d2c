#pragma once

#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

enum class VolumeQuadrature { gauss, lobatto };

// Reference-interval operator set.  Collocated construction fills the
// nodal part; modal_reference additionally fills the interpolation,
// projection, and hybridized operators of the quadrature-based pipeline.
struct ReferenceElement {
    int degree = 0;

    // nodal (collocated) data
    Vector nodes;       // solution nodes on [-1, 1]
    Vector weights;     // diagonal mass entries
    DenseMatrix d;      // Lagrange differentiation at the nodes
    DenseMatrix q;      // M D, satisfies Q + Q^T = B
    DenseMatrix b;      // diag(-1, 0, ..., 0, 1)

    // modal data
    bool modal = false;
    int n_p = 0, n_q = 0, n_f = 0;
    Vector xq, wq;       // volume quadrature
    Vector xf;           // face points (the two endpoints)
    DenseMatrix v;       // basis at volume quadrature points, n_q x n_p
    DenseMatrix vf;      // basis at face points, n_f x n_p
    DenseMatrix m;       // V^T W V
    DenseMatrix m_inv;
    DenseMatrix p;       // quadrature-based L2 projection
    DenseMatrix e;       // Vf P, volume-to-face extrapolation
    DenseMatrix q_nodal; // P^T Qhat P on volume quadrature values
    DenseMatrix bf;      // diag(-1, 1) on the faces
    DenseMatrix qh;      // hybridized operator on (volume, face) values
    DenseMatrix vh;      // [V; Vf]
};

// Collocated Lobatto operators of the given degree (1 <= N <= 40).
ReferenceElement lobatto_sbp(int degree);

// Quadrature-based modal operators with an (N+1)-point volume rule.  The
// Lobatto choice reproduces the collocated scheme through the modal
// pipeline; the Gauss choice gives the genuinely non-collocated scheme.
ReferenceElement modal_reference(int degree, VolumeQuadrature vq = VolumeQuadrature::gauss);

}  // namespace fluxjac
