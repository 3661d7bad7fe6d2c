#include "fluxjac/semidiscrete/system.hpp"

#include "fluxjac/semidiscrete/residual.hpp"

namespace fluxjac {

SparseOperator mass_matrix(const SemiDiscreteSystem& sys) {
    const auto& d = sys.disc;
    const int nf = sys.law().n_fields;
    const int n = d.n_per_field();
    std::vector<Triplet> trip;
    if (!d.is_modal()) {
        for (int f = 0; f < nf; ++f)
            for (int i = 0; i < n; ++i) trip.push_back({f * n + i, f * n + i, d.mass[i]});
    } else {
        const int np = d.elem.n_p;
        for (int f = 0; f < nf; ++f)
            for (int e = 0; e < d.kx; ++e)
                for (int i = 0; i < np; ++i)
                    for (int j = 0; j < np; ++j)
                        if (d.elem.m(i, j) != 0.0)
                            trip.push_back({f * n + e * np + i, f * n + e * np + j,
                                            d.coeff_mass[e] * d.elem.m(i, j)});
    }
    return SparseOperator::from_triplets(nf * n, nf * n, std::move(trip),
                                         Symmetry::general);
}

std::vector<double> apply_mass(const SemiDiscreteSystem& sys, std::span<const double> v) {
    const auto& d = sys.disc;
    const int nf = sys.law().n_fields;
    const int n = d.n_per_field();
    std::vector<double> out(v.size());
    if (!d.is_modal()) {
        for (int f = 0; f < nf; ++f)
            for (int i = 0; i < n; ++i) out[f * n + i] = d.mass[i] * v[f * n + i];
        return out;
    }
    const int np = d.elem.n_p;
    for (int f = 0; f < nf; ++f)
        for (int e = 0; e < d.kx; ++e) {
            const double* src = v.data() + f * n + e * np;
            double* dst = out.data() + f * n + e * np;
            detail::matvec(d.elem.m, src, dst);
            for (int i = 0; i < np; ++i) dst[i] *= d.coeff_mass[e];
        }
    return out;
}

std::vector<double> solve_mass(const SemiDiscreteSystem& sys, std::span<const double> v) {
    const auto& d = sys.disc;
    const int nf = sys.law().n_fields;
    const int n = d.n_per_field();
    std::vector<double> out(v.size());
    if (!d.is_modal()) {
        for (int f = 0; f < nf; ++f)
            for (int i = 0; i < n; ++i) out[f * n + i] = v[f * n + i] / d.mass[i];
        return out;
    }
    const int np = d.elem.n_p;
    for (int f = 0; f < nf; ++f)
        for (int e = 0; e < d.kx; ++e) {
            const double* src = v.data() + f * n + e * np;
            double* dst = out.data() + f * n + e * np;
            detail::matvec(d.elem.m_inv, src, dst);
            for (int i = 0; i < np; ++i) dst[i] /= d.coeff_mass[e];
        }
    return out;
}

double m_norm(const SemiDiscreteSystem& sys, std::span<const double> v) {
    const auto mv = apply_mass(sys, v);
    double s = 0.0;
    for (std::size_t i = 0; i < mv.size(); ++i) s += mv[i] * v[i];
    return std::sqrt(std::max(s, 0.0));
}

void check_admissible(const ConservationLaw& law, std::span<const double> u, int n_nodes) {
    detail::check_nodes_admissible(law, u, n_nodes);
}

double total_entropy(const SemiDiscreteSystem& sys, std::span<const double> u) {
    const auto& d = sys.disc;
    const auto& law = sys.law();
    const int nf = law.n_fields;
    double total = 0.0;
    if (!d.is_modal()) {
        const int n = d.n_per_field();
        std::vector<double> state(nf);
        for (int i = 0; i < n; ++i) {
            for (int f = 0; f < nf; ++f) state[f] = u[f * n + i];
            total += d.mass[i] * entropy<double>(law, state);
        }
        return total;
    }
    const auto& el = d.elem;
    const int np = el.n_p, nq = el.n_q;
    const int n_coef = d.kx * np;
    std::vector<double> coef(np), vals(nq), state(nf);
    std::vector<double> uq(static_cast<std::size_t>(nf) * nq);
    for (int e = 0; e < d.kx; ++e) {
        for (int f = 0; f < nf; ++f) {
            for (int m = 0; m < np; ++m) coef[m] = u[f * n_coef + e * np + m];
            detail::matvec(el.v, coef.data(), vals.data());
            for (int q = 0; q < nq; ++q) uq[f * nq + q] = vals[q];
        }
        for (int q = 0; q < nq; ++q) {
            for (int f = 0; f < nf; ++f) state[f] = uq[f * nq + q];
            total += d.coeff_mass[e] * el.wq[q] * entropy<double>(law, state);
        }
    }
    return total;
}

double total_energy(const SemiDiscreteSystem& sys, std::span<const double> u) {
    const auto mu = apply_mass(sys, u);
    double total = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) total += mu[i] * u[i];
    return total;
}

}  // namespace fluxjac
