#include <cmath>

#include "fluxjac/linalg/lu.hpp"
#include "fluxjac/timestepping/integrators.hpp"

namespace fluxjac {

namespace {

// M + (dt/2) dr/du as one sparse matrix.
SparseOperator newton_matrix(const SemiDiscreteSystem& sys, std::span<const double> z,
                             double dt) {
    auto jac = jacobian_flat(sys, z);
    auto mass = mass_matrix(sys);
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(jac.nnz() + mass.nnz()));
    const auto& rp = jac.row_ptr();
    const auto& ci = jac.col_idx();
    const auto& v = jac.values();
    for (int r = 0; r < jac.rows(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k)
            trip.push_back({r, ci[k], 0.5 * dt * v[k]});
    const auto& mrp = mass.row_ptr();
    const auto& mci = mass.col_idx();
    const auto& mv = mass.values();
    for (int r = 0; r < mass.rows(); ++r)
        for (int k = mrp[r]; k < mrp[r + 1]; ++k) trip.push_back({r, mci[k], mv[k]});
    return SparseOperator::from_triplets(jac.rows(), jac.cols(), std::move(trip),
                                         Symmetry::general);
}

}  // namespace

MidpointResult step_implicit_midpoint(const SemiDiscreteSystem& sys,
                                      std::span<const double> u, double t, double dt,
                                      double rtol, int max_iter) {
    const std::size_t n = u.size();
    const double t_mid = t + 0.5 * dt;

    MidpointResult result;
    result.report.time = t + dt;
    result.report.dt = dt;

    // half-step unknown, warm-started at u^k
    std::vector<double> z(u.begin(), u.end());
    std::vector<double> g(n);

    double prev_gnorm = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    bool converged = false;

    for (int it = 1; it <= max_iter; ++it) {
        // G(z) = M (z - u) + (dt/2) r(z, t_mid)
        const auto r = residual(sys, std::span<const double>(z), t_mid);
        std::vector<double> zmu(n);
        for (std::size_t i = 0; i < n; ++i) zmu[i] = z[i] - u[i];
        const auto mzu = apply_mass(sys, zmu);
        double gnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = mzu[i] + 0.5 * dt * r[i];
            gnorm += g[i] * g[i];
        }
        gnorm = std::sqrt(gnorm);
        result.report.residual_norm = gnorm;

        if (gnorm > prev_gnorm) {
            if (++growth_streak >= 3) break;
        } else {
            growth_streak = 0;
        }
        prev_gnorm = gnorm;

        auto a = newton_matrix(sys, z, dt);
        std::vector<double> negg(n);
        for (std::size_t i = 0; i < n; ++i) negg[i] = -g[i];
        const auto delta = LUFactorization::factor(a).solve(negg);
        for (std::size_t i = 0; i < n; ++i) z[i] += delta[i];

        result.report.newton_iters = it;
        const double dnorm = m_norm(sys, delta);
        const double znorm = m_norm(sys, z);
        result.report.newton_history.push_back(dnorm / std::max(znorm, 1e-300));
        if (dnorm <= rtol * std::max(znorm, 1e-300)) {
            converged = true;
            break;
        }
    }

    result.report.converged = converged;
    result.u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) result.u[i] = 2.0 * z[i] - u[i];
    result.report.entropy = total_entropy(sys, result.u);
    result.report.energy = total_energy(sys, result.u);
    return result;
}

}  // namespace fluxjac
