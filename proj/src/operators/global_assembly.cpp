#include <cmath>

#include "fluxjac/operators/global_discretization.hpp"

namespace fluxjac {

namespace {

// Global 1D skew operator of the multi-element SBP assembly: 1/2 (Q - Q^T)
// diagonal blocks with 1/2-weighted single-entry couplings between the last
// node of an element and the first node of its right neighbor.  Also emits
// the symmetric interface pattern used by dissipation terms.
void assemble_1d_blocks(const DenseMatrix& q_ref, int np, int k, bool periodic,
                        std::vector<Triplet>& q_trip, std::vector<Triplet>& b_trip) {
    const DenseMatrix s = 0.5 * (q_ref - q_ref.transpose());
    for (int e = 0; e < k; ++e) {
        const int o = e * np;
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j)
                if (s(i, j) != 0.0) q_trip.push_back({o + i, o + j, s(i, j)});
    }
    const int n_faces = periodic ? k : k - 1;
    for (int f = 0; f < n_faces; ++f) {
        const int e = f;
        const int en = (f + 1) % k;
        const int right = e * np + (np - 1);
        const int left = en * np;
        q_trip.push_back({right, left, 0.5});
        q_trip.push_back({left, right, -0.5});
        b_trip.push_back({right, left, 0.5});
        b_trip.push_back({left, right, 0.5});
    }
}

}  // namespace

int GlobalDiscretization::n_per_field() const {
    if (is_modal()) return kx * elem.n_p;
    return static_cast<int>(mass.size());
}

GlobalDiscretization fv_periodic(int k, const ConservationLaw& law) {
    if (k < 3) throw DimensionError("periodic finite volume needs K >= 3");
    GlobalDiscretization g;
    g.law = law;
    g.scheme = SchemeKind::fv;
    g.degree = 0;
    g.kx = k;
    g.hx = 2.0 / k;

    std::vector<Triplet> q_trip, b_trip;
    for (int i = 0; i < k; ++i) {
        const int ip = (i + 1) % k;
        const int im = (i + k - 1) % k;
        q_trip.push_back({i, ip, 0.5});
        q_trip.push_back({i, im, -0.5});
        b_trip.push_back({i, ip, 0.5});
        b_trip.push_back({i, im, 0.5});
    }
    DirectionOperator dir;
    dir.q = SparseOperator::from_triplets(k, k, std::move(q_trip), Symmetry::skew);
    dir.b_interface =
        SparseOperator::from_triplets(k, k, std::move(b_trip), Symmetry::symmetric);
    g.dirs.push_back(std::move(dir));
    g.mass.assign(k, g.hx);
    g.x.resize(k);
    for (int i = 0; i < k; ++i) g.x[i] = -1.0 + (i + 0.5) * g.hx;
    return g;
}

GlobalDiscretization assemble_global_periodic(const ReferenceElement& elem, int k,
                                              const ConservationLaw& law) {
    const int np = elem.degree + 1;
    if (k < 1) throw DimensionError("need at least one element");
    if (k == 1 && np < 2)
        throw DimensionError("single-element periodic assembly needs N >= 1");
    GlobalDiscretization g;
    g.law = law;
    g.scheme = SchemeKind::dgsem;
    g.degree = elem.degree;
    g.kx = k;
    g.hx = 2.0 / k;
    const double jac = g.hx / 2.0;
    const int n = k * np;

    std::vector<Triplet> q_trip, b_trip;
    assemble_1d_blocks(elem.q, np, k, true, q_trip, b_trip);
    DirectionOperator dir;
    dir.q = SparseOperator::from_triplets(n, n, std::move(q_trip), Symmetry::skew);
    dir.b_interface =
        SparseOperator::from_triplets(n, n, std::move(b_trip), Symmetry::symmetric);
    g.dirs.push_back(std::move(dir));

    g.mass.resize(n);
    g.x.resize(n);
    for (int e = 0; e < k; ++e) {
        const double xc = -1.0 + (e + 0.5) * g.hx;
        for (int i = 0; i < np; ++i) {
            g.mass[e * np + i] = jac * elem.weights[i];
            g.x[e * np + i] = xc + jac * elem.nodes[i];
        }
    }
    return g;
}

GlobalDiscretization assemble_global_nonperiodic(const ReferenceElement& elem, int k,
                                                 const BoundaryPolicy& bc,
                                                 const ConservationLaw& law) {
    auto g = assemble_global_periodic(elem, std::max(k, 1), law);
    const int np = elem.degree + 1;
    const int n = k * np;

    std::vector<Triplet> q_trip, b_trip;
    assemble_1d_blocks(elem.q, np, k, false, q_trip, b_trip);
    DirectionOperator dir;
    dir.q = SparseOperator::from_triplets(n, n, std::move(q_trip), Symmetry::skew);
    dir.b_interface =
        SparseOperator::from_triplets(n, n, std::move(b_trip), Symmetry::symmetric);
    g.dirs.clear();
    g.dirs.push_back(std::move(dir));

    g.periodic = false;
    g.boundary = bc;
    g.left_node = 0;
    g.right_node = n - 1;
    return g;
}

GlobalDiscretization assemble_global_modal(const ReferenceElement& modal_elem, int k,
                                           const ConservationLaw& law) {
    if (!modal_elem.modal) throw DimensionError("assemble_global_modal needs modal data");
    if (k < 1) throw DimensionError("need at least one element");
    GlobalDiscretization g;
    g.law = law;
    g.scheme = SchemeKind::modal;
    g.degree = modal_elem.degree;
    g.kx = k;
    g.hx = 2.0 / k;
    g.elem = modal_elem;

    const int nq = modal_elem.n_q, nf = modal_elem.n_f;
    const int nt = nq + nf;
    const int n = k * nt;
    const DenseMatrix s = modal_elem.q_nodal - modal_elem.q_nodal.transpose();
    const DenseMatrix etb = modal_elem.e.transpose() * modal_elem.bf;
    const DenseMatrix bte = modal_elem.bf * modal_elem.e;

    std::vector<Triplet> q_trip, b_trip;
    auto push_block = [&q_trip](int ro, int co, const DenseMatrix& blk, double scale) {
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                if (blk(i, j) != 0.0) q_trip.push_back({ro + i, co + j, scale * blk(i, j)});
    };
    for (int e = 0; e < k; ++e) {
        const int o = e * nt;
        push_block(o, o, s, 0.5);
        push_block(o, o + nq, etb, 0.5);
        push_block(o + nq, o, bte, -0.5);
    }
    for (int e = 0; e < k; ++e) {
        const int en = (e + 1) % k;
        const int right = e * nt + nq + 1;  // right face of e
        const int left = en * nt + nq;      // left face of e+1
        q_trip.push_back({right, left, 0.5});
        q_trip.push_back({left, right, -0.5});
        b_trip.push_back({right, left, 0.5});
        b_trip.push_back({left, right, 0.5});
    }
    g.modal_q = SparseOperator::from_triplets(n, n, std::move(q_trip), Symmetry::skew);
    g.modal_b = SparseOperator::from_triplets(n, n, std::move(b_trip), Symmetry::symmetric);

    g.coeff_mass.assign(k, g.hx / 2.0);
    g.xq.resize(static_cast<std::size_t>(k) * nq);
    for (int e = 0; e < k; ++e) {
        const double xc = -1.0 + (e + 0.5) * g.hx;
        for (int i = 0; i < nq; ++i) g.xq[e * nq + i] = xc + (g.hx / 2.0) * modal_elem.xq[i];
    }
    return g;
}

GlobalDiscretization tensor2d_affine(const ReferenceElement& elem, int kx, int ky,
                                     const ConservationLaw& law) {
    if (law.dim != 2) throw DimensionError("tensor2d_affine needs a 2D law");
    if (kx < 1 || ky < 1) throw DimensionError("need at least one element per direction");
    const int np = elem.degree + 1;
    if ((kx == 1 || ky == 1) && np < 2)
        throw DimensionError("single-element periodic assembly needs N >= 1");
    GlobalDiscretization g;
    g.law = law;
    g.scheme = SchemeKind::dgsem2d;
    g.degree = elem.degree;
    g.kx = kx;
    g.ky = ky;
    g.hx = 2.0 / kx;
    g.hy = 2.0 / ky;

    const int nx = kx * np, ny = ky * np;
    const int n = nx * ny;

    // 1D global skew and interface patterns per direction
    std::vector<Triplet> qx_t, bx_t, qy_t, by_t;
    assemble_1d_blocks(elem.q, np, kx, true, qx_t, bx_t);
    assemble_1d_blocks(elem.q, np, ky, true, qy_t, by_t);

    // scaled 1D masses: (h/2) * w at each global 1D node
    const double jx = g.hx / 2.0, jy = g.hy / 2.0;
    auto mass_1d = [&](int k1, double j1) {
        std::vector<double> m(static_cast<std::size_t>(k1) * np);
        for (int e = 0; e < k1; ++e)
            for (int i = 0; i < np; ++i) m[e * np + i] = j1 * elem.weights[i];
        return m;
    };
    const auto mx = mass_1d(kx, jx);
    const auto my = mass_1d(ky, jy);

    // Q_x = diag(my) (x) Q1d_x, Q_y = Q1d_y (x) diag(mx); node index
    // g = iy * nx + ix.
    auto kron_rows = [&](const std::vector<Triplet>& one_d, const std::vector<double>& m,
                         bool x_direction) {
        std::vector<Triplet> out;
        out.reserve(one_d.size() * m.size());
        if (x_direction) {
            for (int iy = 0; iy < ny; ++iy)
                for (const auto& t : one_d)
                    out.push_back({iy * nx + t.row, iy * nx + t.col, my[iy] * t.value});
        } else {
            for (const auto& t : one_d)
                for (int ix = 0; ix < nx; ++ix)
                    out.push_back({t.row * nx + ix, t.col * nx + ix, mx[ix] * t.value});
        }
        return out;
    };

    DirectionOperator dx;
    dx.q = SparseOperator::from_triplets(n, n, kron_rows(qx_t, my, true), Symmetry::skew);
    dx.b_interface =
        SparseOperator::from_triplets(n, n, kron_rows(bx_t, my, true), Symmetry::symmetric);
    dx.normal[0] = 1.0;
    dx.normal[1] = 0.0;
    DirectionOperator dy;
    dy.q = SparseOperator::from_triplets(n, n, kron_rows(qy_t, mx, false), Symmetry::skew);
    dy.b_interface =
        SparseOperator::from_triplets(n, n, kron_rows(by_t, mx, false), Symmetry::symmetric);
    dy.normal[0] = 0.0;
    dy.normal[1] = 1.0;
    g.dirs.push_back(std::move(dx));
    g.dirs.push_back(std::move(dy));

    g.mass.resize(n);
    g.x.resize(n);
    g.y.resize(n);
    for (int ey = 0; ey < ky; ++ey) {
        const double yc = -1.0 + (ey + 0.5) * g.hy;
        for (int jy_ = 0; jy_ < np; ++jy_) {
            const int iy = ey * np + jy_;
            for (int ex = 0; ex < kx; ++ex) {
                const double xc = -1.0 + (ex + 0.5) * g.hx;
                for (int jx_ = 0; jx_ < np; ++jx_) {
                    const int ix = ex * np + jx_;
                    const int node = iy * nx + ix;
                    g.mass[node] = mx[ix] * my[iy];
                    g.x[node] = xc + jx * elem.nodes[jx_];
                    g.y[node] = yc + jy * elem.nodes[jy_];
                }
            }
        }
    }
    return g;
}

}  // namespace fluxjac
