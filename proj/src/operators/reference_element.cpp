#include "fluxjac/operators/reference_element.hpp"

#include "fluxjac/error.hpp"
#include "fluxjac/operators/quadrature.hpp"

namespace fluxjac {

ReferenceElement lobatto_sbp(int degree) {
    if (degree < 1 || degree > 40) throw DimensionError("lobatto_sbp supports 1 <= N <= 40");
    ReferenceElement elem;
    elem.degree = degree;
    auto [x, w] = lobatto_nodes(degree);
    elem.nodes = x;
    elem.weights = w;

    DenseMatrix v, vx;
    legendre_vandermonde(x, degree, v, vx);
    elem.d = vx * v.inverse();
    elem.q = w.asDiagonal() * elem.d;
    elem.b = DenseMatrix::Zero(degree + 1, degree + 1);
    elem.b(0, 0) = -1.0;
    elem.b(degree, degree) = 1.0;
    return elem;
}

ReferenceElement modal_reference(int degree, VolumeQuadrature vq) {
    if (degree < 1 || degree > 40)
        throw DimensionError("modal_reference supports 1 <= N <= 40");
    ReferenceElement elem;
    elem.degree = degree;
    elem.modal = true;
    elem.n_p = degree + 1;
    elem.n_q = degree + 1;
    elem.n_f = 2;

    if (vq == VolumeQuadrature::gauss) {
        auto [x, w] = gauss_nodes(degree + 1);
        elem.xq = x;
        elem.wq = w;
    } else {
        auto [x, w] = lobatto_nodes(degree);
        elem.xq = x;
        elem.wq = w;
    }
    elem.xf = Vector(2);
    elem.xf << -1.0, 1.0;

    DenseMatrix vx, vfx;
    legendre_vandermonde(elem.xq, degree, elem.v, vx);
    legendre_vandermonde(elem.xf, degree, elem.vf, vfx);

    const DenseMatrix w_diag = elem.wq.asDiagonal();
    elem.m = elem.v.transpose() * w_diag * elem.v;
    elem.m_inv = elem.m.inverse();
    elem.p = elem.m_inv * (elem.v.transpose() * w_diag);
    elem.e = elem.vf * elem.p;

    // modal weak differentiation Qhat_ij = integral of phi_i phi_j'
    const DenseMatrix qhat = elem.v.transpose() * w_diag * vx;
    elem.q_nodal = elem.p.transpose() * qhat * elem.p;

    elem.bf = DenseMatrix::Zero(2, 2);
    elem.bf(0, 0) = -1.0;
    elem.bf(1, 1) = 1.0;

    const int nt = elem.n_q + elem.n_f;
    elem.qh = DenseMatrix::Zero(nt, nt);
    elem.qh.topLeftCorner(elem.n_q, elem.n_q) = elem.q_nodal - elem.q_nodal.transpose();
    elem.qh.topRightCorner(elem.n_q, elem.n_f) = elem.e.transpose() * elem.bf;
    elem.qh.bottomLeftCorner(elem.n_f, elem.n_q) = -elem.bf * elem.e;
    elem.qh.bottomRightCorner(elem.n_f, elem.n_f) = elem.bf;
    elem.qh *= 0.5;

    elem.vh = DenseMatrix(nt, elem.n_p);
    elem.vh.topRows(elem.n_q) = elem.v;
    elem.vh.bottomRows(elem.n_f) = elem.vf;

    // keep the nodal fields populated for callers that only need nodes
    elem.nodes = elem.xq;
    elem.weights = elem.wq;
    return elem;
}

}  // namespace fluxjac
