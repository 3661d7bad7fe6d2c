#include "fluxjac/semidiscrete/jacobian.hpp"

#include <Eigen/Sparse>

#include "fluxjac/autodiff/flux_derivatives.hpp"
#include "fluxjac/fluxes/change_of_vars.hpp"

namespace fluxjac {

namespace {

// Fills g[i * nf + j] = d flux_i / d u_{arg, j} at node states (a, b).
template <class FluxFn>
auto make_pair_jacobian_kernel(const ConservationLaw& law, std::span<const double> u,
                               int n_nodes, JacobianVariant variant, FluxFn flux) {
    return [&law, u, n_nodes, variant, flux](int a, int b, std::span<double> g) {
        const int nf = law.n_fields;
        with_tangent_width(nf, [&](auto width) {
            constexpr int W = decltype(width)::value;
            std::array<Dual<W>, W> ua, ub, out;
            const bool seed_right = variant == JacobianVariant::right_arg;
            for (int f = 0; f < nf; ++f) {
                ua[f] = seed_right ? Dual<W>(u[f * n_nodes + a])
                                   : Dual<W>::seeded(u[f * n_nodes + a], f);
                ub[f] = seed_right ? Dual<W>::seeded(u[f * n_nodes + b], f)
                                   : Dual<W>(u[f * n_nodes + b]);
            }
            flux(std::span<const Dual<W>>(ua.data(), nf),
                 std::span<const Dual<W>>(ub.data(), nf), std::span<Dual<W>>(out.data(), nf));
            for (int i = 0; i < nf; ++i)
                for (int j = 0; j < nf; ++j) g[i * nf + j] = out[i].dot[j];
        });
    };
}

int direction_of(const DirectionOperator& d) {
    return d.normal[1] != 0.0 ? 1 : (d.normal[2] != 0.0 ? 2 : 0);
}

void accumulate_flux_jacobian(const SemiDiscreteSystem& sys, std::span<const double> u,
                              JacobianVariant variant, BlockTriplets& bt) {
    const auto& law = sys.law();
    const int n = sys.disc.n_per_field();
    for (const auto& dir_op : sys.disc.dirs) {
        const int dir = direction_of(dir_op);
        auto kernel = make_pair_jacobian_kernel(
            law, u, n, variant,
            [&law, dir](auto a, auto b, auto out) { flux_ec(law, dir, a, b, out); });
        const double diag_sign =
            variant == JacobianVariant::right_arg
                ? (dir_op.q.symmetry() == Symmetry::skew ? -1.0 : 1.0)
                : 1.0;
        add_hadamard_jacobian(dir_op.q, law.n_fields, 2.0, 1.0, diag_sign, variant,
                              kernel, bt);
    }
}

void accumulate_dissipation_jacobian(const SemiDiscreteSystem& sys,
                                     std::span<const double> u, JacobianVariant variant,
                                     BlockTriplets& bt) {
    if (!sys.dissipation) return;
    const auto& law = sys.law();
    const int n = sys.disc.n_per_field();
    for (const auto& dir_op : sys.disc.dirs) {
        auto kernel = make_pair_jacobian_kernel(
            law, u, n, variant, [&law, &dir_op, &sys](auto a, auto b, auto out) {
                lax_friedrichs(law, a, b, dir_op.normal, *sys.dissipation, out);
            });
        const double off_sign = variant == JacobianVariant::right_arg ? 1.0 : -1.0;
        const double diag_sign = variant == JacobianVariant::right_arg ? -1.0 : 1.0;
        add_hadamard_jacobian(dir_op.b_interface, law.n_fields, 1.0, off_sign, diag_sign,
                              variant, kernel, bt);
    }
}

void accumulate_boundary_jacobian(const SemiDiscreteSystem& sys, std::span<const double> u,
                                  BlockTriplets& bt) {
    const auto& d = sys.disc;
    if (d.periodic || !d.boundary) return;
    const auto& law = sys.law();
    const int nf = law.n_fields;
    const int n = d.n_per_field();
    for (bool left : {true, false}) {
        const int node = left ? d.left_node : d.right_node;
        const double sign = left ? -1.0 : 1.0;
        with_tangent_width(nf, [&](auto width) {
            constexpr int W = decltype(width)::value;
            std::array<Dual<W>, W> interior, exterior, f;
            for (int fi = 0; fi < nf; ++fi)
                interior[fi] = Dual<W>::seeded(u[fi * n + node], fi);
            exterior_state(*d.boundary, law, left,
                           std::span<const Dual<W>>(interior.data(), nf),
                           std::span<Dual<W>>(exterior.data(), nf));
            flux_ec(law, 0, std::span<const Dual<W>>(interior.data(), nf),
                    std::span<const Dual<W>>(exterior.data(), nf),
                    std::span<Dual<W>>(f.data(), nf));
            for (int i = 0; i < nf; ++i)
                for (int j = 0; j < nf; ++j)
                    if (f[i].dot[j] != 0.0)
                        bt.at(i, j).push_back({node, node, sign * f[i].dot[j]});
        });
    }
}

Eigen::SparseMatrix<double> to_eigen(const SparseOperator& a) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(a.nnz()));
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (int r = 0; r < a.rows(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k) trip.emplace_back(r, ci[k], v[k]);
    Eigen::SparseMatrix<double> m(a.rows(), a.cols());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SparseOperator from_eigen(const Eigen::SparseMatrix<double>& m) {
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(m.nonZeros()));
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            trip.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()),
                            it.value()});
    return SparseOperator::from_triplets(static_cast<int>(m.rows()),
                                         static_cast<int>(m.cols()), std::move(trip),
                                         Symmetry::general);
}

// I_nf (x) blockdiag_k(blk), acting field-major.
Eigen::SparseMatrix<double> field_blockdiag(const DenseMatrix& blk, int k, int nf) {
    const int br = static_cast<int>(blk.rows());
    const int bc = static_cast<int>(blk.cols());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(nf) * k * blk.size());
    for (int f = 0; f < nf; ++f)
        for (int e = 0; e < k; ++e)
            for (int i = 0; i < br; ++i)
                for (int j = 0; j < bc; ++j)
                    if (blk(i, j) != 0.0)
                        trip.emplace_back(f * k * br + e * br + i,
                                          f * k * bc + e * bc + j, blk(i, j));
    Eigen::SparseMatrix<double> m(nf * k * br, nf * k * bc);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace

BlockJacobian jacobian_collocated(const SemiDiscreteSystem& sys, std::span<const double> u,
                                  JacobianVariant variant) {
    if (sys.disc.is_modal())
        throw DimensionError("jacobian_collocated requires a collocated scheme");
    detail::check_nodes_admissible(sys.law(), u, sys.disc.n_per_field());
    BlockTriplets bt(sys.law().n_fields, sys.disc.n_per_field());
    accumulate_flux_jacobian(sys, u, variant, bt);
    return bt.build();
}

BlockJacobian jacobian_dissipation(const SemiDiscreteSystem& sys, std::span<const double> u,
                                   JacobianVariant variant) {
    if (!sys.dissipation) throw DimensionError("system has no dissipation configured");
    BlockTriplets bt(sys.law().n_fields, sys.disc.n_per_field());
    accumulate_dissipation_jacobian(sys, u, variant, bt);
    return bt.build();
}

BlockJacobian jacobian_boundary(const SemiDiscreteSystem& sys, std::span<const double> u) {
    BlockTriplets bt(sys.law().n_fields, sys.disc.n_per_field());
    accumulate_boundary_jacobian(sys, u, bt);
    return bt.build();
}

SparseOperator jacobian_modal(const SemiDiscreteSystem& sys, std::span<const double> u_hat) {
    const auto& d = sys.disc;
    const auto& law = sys.law();
    const auto& el = d.elem;
    const int nf = law.n_fields;
    const int np = el.n_p, nq = el.n_q, nt = el.n_q + el.n_f;
    const int k = d.kx;
    const int n_quad = k * nt;
    const int n_volq = k * nq;

    const std::vector<double> utilde = entropy_project<double>(sys, u_hat);

    // Theorem blocks at the projected states, on quadrature space
    BlockTriplets bt(nf, n_quad);
    {
        auto kernel = make_pair_jacobian_kernel(
            law, std::span<const double>(utilde), n_quad, JacobianVariant::right_arg,
            [&law](auto a, auto b, auto out) { flux_ec(law, 0, a, b, out); });
        add_hadamard_jacobian(d.modal_q, nf, 2.0, 1.0, -1.0, JacobianVariant::right_arg,
                              kernel, bt);
    }
    if (sys.dissipation) {
        static const double normal[3] = {1.0, 0.0, 0.0};
        auto kernel = make_pair_jacobian_kernel(
            law, std::span<const double>(utilde), n_quad, JacobianVariant::right_arg,
            [&law, &sys](auto a, auto b, auto out) {
                lax_friedrichs(law, a, b, normal, *sys.dissipation, out);
            });
        add_hadamard_jacobian(d.modal_b, nf, 1.0, 1.0, -1.0, JacobianVariant::right_arg,
                              kernel, bt);
    }
    Eigen::SparseMatrix<double> middle = to_eigen(bt.build().flatten());

    // change-of-variables factors
    std::vector<Eigen::Triplet<double>> cuv_t, cvu_t;
    std::vector<double> state(nf);
    for (int p = 0; p < n_quad; ++p) {
        for (int f = 0; f < nf; ++f) state[f] = utilde[f * n_quad + p];
        DenseMatrix m = dudv(law, state);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                if (m(i, j) != 0.0) cuv_t.emplace_back(i * n_quad + p, j * n_quad + p, m(i, j));
    }
    // unprojected volume values V u_hat
    std::vector<double> uq(static_cast<std::size_t>(nf) * n_volq);
    {
        std::vector<double> coef(np), vals(nq);
        const int n_coef = k * np;
        for (int e = 0; e < k; ++e)
            for (int f = 0; f < nf; ++f) {
                for (int m2 = 0; m2 < np; ++m2) coef[m2] = u_hat[f * n_coef + e * np + m2];
                detail::matvec(el.v, coef.data(), vals.data());
                for (int qp = 0; qp < nq; ++qp) uq[f * n_volq + e * nq + qp] = vals[qp];
            }
    }
    for (int p = 0; p < n_volq; ++p) {
        for (int f = 0; f < nf; ++f) state[f] = uq[f * n_volq + p];
        DenseMatrix m = dvdu(law, state);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                if (m(i, j) != 0.0) cvu_t.emplace_back(i * n_volq + p, j * n_volq + p, m(i, j));
    }
    Eigen::SparseMatrix<double> cuv(nf * n_quad, nf * n_quad);
    cuv.setFromTriplets(cuv_t.begin(), cuv_t.end());
    Eigen::SparseMatrix<double> cvu(nf * n_volq, nf * n_volq);
    cvu.setFromTriplets(cvu_t.begin(), cvu_t.end());

    const Eigen::SparseMatrix<double> vht = field_blockdiag(el.vh.transpose(), k, nf);
    const Eigen::SparseMatrix<double> vhp = field_blockdiag(el.vh * el.p, k, nf);
    const Eigen::SparseMatrix<double> v = field_blockdiag(el.v, k, nf);

    Eigen::SparseMatrix<double> jac = vht * middle * cuv * vhp * cvu * v;
    jac.prune(0.0);
    return from_eigen(jac);
}

SparseOperator jacobian_flat(const SemiDiscreteSystem& sys, std::span<const double> u) {
    if (sys.disc.is_modal()) return jacobian_modal(sys, u);
    detail::check_nodes_admissible(sys.law(), u, sys.disc.n_per_field());
    BlockTriplets bt(sys.law().n_fields, sys.disc.n_per_field());
    accumulate_flux_jacobian(sys, u, JacobianVariant::right_arg, bt);
    accumulate_dissipation_jacobian(sys, u, JacobianVariant::right_arg, bt);
    accumulate_boundary_jacobian(sys, u, bt);
    return bt.build().flatten();
}

std::vector<double> jacobian_vector_product(const SemiDiscreteSystem& sys,
                                            std::span<const double> u,
                                            std::span<const double> w) {
    if (w.size() != u.size()) throw DimensionError("vector size mismatch");
    const auto& law = sys.law();
    if (sys.disc.is_modal()) {
        auto jac = jacobian_modal(sys, u);
        return jac.apply(std::vector<double>(w.begin(), w.end()));
    }
    const int n = sys.disc.n_per_field();
    std::vector<double> out(u.size(), 0.0);
    for (const auto& dir_op : sys.disc.dirs) {
        const int dir = direction_of(dir_op);
        auto kernel = make_pair_jacobian_kernel(
            law, u, n, JacobianVariant::right_arg,
            [&law, dir](auto a, auto b, auto o) { flux_ec(law, dir, a, b, o); });
        add_hadamard_jacobian_product(dir_op.q, law.n_fields, 2.0, 1.0, -1.0, kernel, w,
                                      std::span<double>(out));
        if (sys.dissipation) {
            auto dk = make_pair_jacobian_kernel(
                law, u, n, JacobianVariant::right_arg,
                [&law, &dir_op, &sys](auto a, auto b, auto o) {
                    lax_friedrichs(law, a, b, dir_op.normal, *sys.dissipation, o);
                });
            add_hadamard_jacobian_product(dir_op.b_interface, law.n_fields, 1.0, 1.0, -1.0,
                                          dk, w, std::span<double>(out));
        }
    }
    if (!sys.disc.periodic && sys.disc.boundary) {
        auto bj = jacobian_boundary(sys, u);
        const auto prod = bj.flatten().apply(std::vector<double>(w.begin(), w.end()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += prod[i];
    }
    return out;
}

}  // namespace fluxjac
