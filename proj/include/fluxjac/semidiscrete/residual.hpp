#pragma once

#include <vector>

#include "fluxjac/semidiscrete/flux_differencing.hpp"
#include "fluxjac/semidiscrete/system.hpp"

namespace fluxjac {

namespace detail {

template <class T>
void matvec(const DenseMatrix& m, const T* x, T* y) {
    for (int i = 0; i < m.rows(); ++i) {
        T acc(0.0);
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
}

template <class T>
void matvec_transpose(const DenseMatrix& m, const T* x, T* y) {
    for (int j = 0; j < m.cols(); ++j) {
        T acc(0.0);
        for (int i = 0; i < m.rows(); ++i) acc += m(i, j) * x[i];
        y[j] = acc;
    }
}

template <class T>
void check_nodes_admissible(const ConservationLaw& law, std::span<const T> u, int n) {
    std::vector<double> state(law.n_fields);
    for (int node = 0; node < n; ++node) {
        for (int f = 0; f < law.n_fields; ++f) state[f] = value(u[f * n + node]);
        if (!admissible(law, state))
            throw InadmissibleStateError("inadmissible state at node " +
                                         std::to_string(node), node);
    }
}

}  // namespace detail

// Entropy projection of modal coefficients: u(Vh P v(V u_hat)), returning
// the projected states at the stacked (volume, face) points of every
// element, field-major with stride K * (Nq + Nf).
template <class T>
std::vector<T> entropy_project(const SemiDiscreteSystem& sys, std::span<const T> u_hat) {
    const auto& d = sys.disc;
    const auto& law = d.law;
    const auto& el = d.elem;
    const int nf = law.n_fields;
    const int np = el.n_p, nq = el.n_q, nt = el.n_q + el.n_f;
    const int k = d.kx;
    const int n_coef = k * np;
    const int n_quad = k * nt;

    std::vector<T> out(static_cast<std::size_t>(nf) * n_quad, T(0.0));
    std::vector<T> coef(np), uq(static_cast<std::size_t>(nf) * nq),
        vq(static_cast<std::size_t>(nf) * nq), vcoef(np),
        vt(static_cast<std::size_t>(nf) * nt);
    std::vector<T> state(nf), vstate(nf);

    for (int e = 0; e < k; ++e) {
        // volume values of every field
        for (int f = 0; f < nf; ++f) {
            for (int m = 0; m < np; ++m) coef[m] = u_hat[f * n_coef + e * np + m];
            detail::matvec(el.v, coef.data(), uq.data() + f * nq);
        }
        // entropy variables pointwise at volume quadrature
        for (int qp = 0; qp < nq; ++qp) {
            for (int f = 0; f < nf; ++f) state[f] = uq[f * nq + qp];
            {
                std::vector<double> sval(nf);
                for (int f = 0; f < nf; ++f) sval[f] = value(state[f]);
                if (!admissible(law, sval))
                    throw InadmissibleStateError(
                        "inadmissible state at volume quadrature point " +
                            std::to_string(e * nq + qp),
                        e * nq + qp);
            }
            entropy_vars(law, std::span<const T>(state), std::span<T>(vstate));
            for (int f = 0; f < nf; ++f) vq[f * nq + qp] = vstate[f];
        }
        // project and evaluate at volume + face points
        for (int f = 0; f < nf; ++f) {
            detail::matvec(el.p, vq.data() + f * nq, vcoef.data());
            detail::matvec(el.vh, vcoef.data(), vt.data() + f * nt);
        }
        for (int pt = 0; pt < nt; ++pt) {
            for (int f = 0; f < nf; ++f) vstate[f] = vt[f * nt + pt];
            cons_vars(law, std::span<const T>(vstate), std::span<T>(state));
            std::vector<double> sval(nf);
            for (int f = 0; f < nf; ++f) sval[f] = value(state[f]);
            if (!admissible(law, sval))
                throw InadmissibleStateError(
                    "entropy projection produced an inadmissible state at point " +
                        std::to_string(e * nt + pt),
                    e * nt + pt);
            for (int f = 0; f < nf; ++f) out[f * n_quad + e * nt + pt] = state[f];
        }
    }
    return out;
}

// Full semi-discrete residual r(u): flux differencing plus dissipation,
// boundary, and source contributions.  The mass matrix is not applied.
// Generic in the scalar type so automatic differentiation can flow through
// the entire evaluation.
template <class T>
std::vector<T> residual_t(const SemiDiscreteSystem& sys, std::span<const T> u, double t) {
    const auto& d = sys.disc;
    const auto& law = d.law;
    const int nf = law.n_fields;

    if (static_cast<int>(u.size()) != sys.n_dof())
        throw DimensionError("solution vector size mismatch");

    if (!d.is_modal()) {
        const int n = d.n_per_field();
        detail::check_nodes_admissible(law, u, n);
        std::vector<T> out(u.size(), T(0.0));
        for (const auto& dir_op : d.dirs) {
            const int dir = dir_op.normal[1] != 0.0 ? 1 : (dir_op.normal[2] != 0.0 ? 2 : 0);
            add_hadamard_residual(
                dir_op.q, nf, u, 2.0,
                [&](std::span<const T> a, std::span<const T> b, std::span<T> f) {
                    flux_ec(law, dir, a, b, f);
                },
                std::span<T>(out));
            if (sys.dissipation) {
                add_hadamard_residual(
                    dir_op.b_interface, nf, u, 1.0,
                    [&](std::span<const T> a, std::span<const T> b, std::span<T> f) {
                        lax_friedrichs(law, a, b, dir_op.normal, *sys.dissipation, f);
                    },
                    std::span<T>(out));
            }
        }
        if (!d.periodic && d.boundary) {
            std::vector<T> interior(nf), exterior(nf), f(nf);
            // left endpoint, boundary operator entry -1
            for (int fi = 0; fi < nf; ++fi) interior[fi] = u[fi * n + d.left_node];
            exterior_state(*d.boundary, law, true, std::span<const T>(interior),
                           std::span<T>(exterior));
            flux_ec(law, 0, std::span<const T>(interior), std::span<const T>(exterior),
                    std::span<T>(f));
            for (int fi = 0; fi < nf; ++fi) out[fi * n + d.left_node] -= f[fi];
            // right endpoint, +1
            for (int fi = 0; fi < nf; ++fi) interior[fi] = u[fi * n + d.right_node];
            exterior_state(*d.boundary, law, false, std::span<const T>(interior),
                           std::span<T>(exterior));
            flux_ec(law, 0, std::span<const T>(interior), std::span<const T>(exterior),
                    std::span<T>(f));
            for (int fi = 0; fi < nf; ++fi) out[fi * n + d.right_node] += f[fi];
        }
        if (sys.source) {
            std::vector<double> s(u.size());
            sys.source->value(t, std::span<double>(s));
            for (int fi = 0; fi < nf; ++fi)
                for (int node = 0; node < n; ++node)
                    out[fi * n + node] -= d.mass[node] * s[fi * n + node];
        }
        return out;
    }

    // ---- modal path ----
    const auto& el = d.elem;
    const int np = el.n_p, nq = el.n_q, nt = el.n_q + el.n_f;
    const int k = d.kx;
    const int n_coef = k * np;
    const int n_quad = k * nt;

    std::vector<T> utilde = entropy_project(sys, u);
    std::vector<T> rq(static_cast<std::size_t>(nf) * n_quad, T(0.0));
    add_hadamard_residual(
        d.modal_q, nf, std::span<const T>(utilde), 2.0,
        [&](std::span<const T> a, std::span<const T> b, std::span<T> f) {
            flux_ec(law, 0, a, b, f);
        },
        std::span<T>(rq));
    if (sys.dissipation) {
        const double normal[3] = {1.0, 0.0, 0.0};
        add_hadamard_residual(
            d.modal_b, nf, std::span<const T>(utilde), 1.0,
            [&](std::span<const T> a, std::span<const T> b, std::span<T> f) {
                lax_friedrichs(law, a, b, normal, *sys.dissipation, f);
            },
            std::span<T>(rq));
    }

    std::vector<T> out(static_cast<std::size_t>(nf) * n_coef, T(0.0));
    for (int e = 0; e < k; ++e)
        for (int f = 0; f < nf; ++f)
            detail::matvec_transpose(el.vh, rq.data() + f * n_quad + e * nt,
                                     out.data() + f * n_coef + e * np);

    if (sys.source) {
        // weak-form source: out -= J V^T W s(x_q, t) per element and field
        std::vector<double> s(static_cast<std::size_t>(nf) * k * nq);
        sys.source->value(t, std::span<double>(s));
        std::vector<double> ws(nq), proj(np);
        for (int e = 0; e < k; ++e) {
            for (int f = 0; f < nf; ++f) {
                for (int qp = 0; qp < nq; ++qp)
                    ws[qp] = el.wq[qp] * s[f * (k * nq) + e * nq + qp];
                detail::matvec_transpose(el.v, ws.data(), proj.data());
                for (int m = 0; m < np; ++m)
                    out[f * n_coef + e * np + m] -= d.coeff_mass[e] * proj[m];
            }
        }
    }
    return out;
}

inline std::vector<double> residual(const SemiDiscreteSystem& sys,
                                    std::span<const double> u, double t = 0.0) {
    return residual_t<double>(sys, u, t);
}

}  // namespace fluxjac
