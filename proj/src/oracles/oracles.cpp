#include "fluxjac/oracles/oracles.hpp"

#include <cmath>

#include "fluxjac/semidiscrete/residual.hpp"

namespace fluxjac {

DifferentiableResidual make_residual_oracle(const SemiDiscreteSystem& sys, double t) {
    DifferentiableResidual r;
    r.eval = [&sys, t](std::span<const double> u) { return residual_t<double>(sys, u, t); };
    r.eval_dual = [&sys, t](std::span<const Dual<1>> u) {
        return residual_t<Dual<1>>(sys, u, t);
    };
    return r;
}

DenseMatrix ad_jacobian(const DifferentiableResidual& r, std::span<const double> u) {
    const int n = static_cast<int>(u.size());
    if (n > 4096) throw DimensionError("ad_jacobian produces dense output; n <= 4096");
    std::vector<Dual<1>> ud(n);
    for (int i = 0; i < n; ++i) ud[i] = Dual<1>(u[i]);
    DenseMatrix jac;
    for (int j = 0; j < n; ++j) {
        ud[j].dot[0] = 1.0;
        const auto col = r.eval_dual(ud);
        if (j == 0) jac.resize(static_cast<Eigen::Index>(col.size()), n);
        for (std::size_t i = 0; i < col.size(); ++i)
            jac(static_cast<Eigen::Index>(i), j) = col[i].dot[0];
        ud[j].dot[0] = 0.0;
    }
    return jac;
}

DenseMatrix fd_jacobian(const std::function<std::vector<double>(std::span<const double>)>& r,
                        std::span<const double> u) {
    const int n = static_cast<int>(u.size());
    const double eps_rel = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<double> up(u.begin(), u.end()), um(u.begin(), u.end());
    DenseMatrix jac;
    for (int j = 0; j < n; ++j) {
        const double h = eps_rel * std::max(std::abs(u[j]), 1.0);
        up[j] = u[j] + h;
        um[j] = u[j] - h;
        const auto fp = r(up);
        const auto fm = r(um);
        if (j == 0) jac.resize(static_cast<Eigen::Index>(fp.size()), n);
        for (std::size_t i = 0; i < fp.size(); ++i)
            jac(static_cast<Eigen::Index>(i), j) = (fp[i] - fm[i]) / (2.0 * h);
        up[j] = u[j];
        um[j] = u[j];
    }
    return jac;
}

std::vector<double> random_admissible_field(const ConservationLaw& law, int n_nodes,
                                            std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int nf = law.n_fields;
    std::vector<double> u(static_cast<std::size_t>(nf) * n_nodes);
    for (int node = 0; node < n_nodes; ++node) {
        switch (law.kind) {
            case LawKind::burgers:
                u[node] = normal(rng);
                break;
            case LawKind::shallow_water: {
                double h = uni(rng);
                while (h <= 1e-3) h = uni(rng);
                u[node] = h;
                for (int d = 0; d < law.dim; ++d) u[(1 + d) * n_nodes + node] = normal(rng);
                break;
            }
            case LawKind::euler: {
                double rho = uni(rng), p = uni(rng);
                while (rho <= 1e-3) rho = uni(rng);
                while (p <= 1e-3) p = uni(rng);
                u[node] = rho;
                double ke = 0.0;
                for (int d = 0; d < law.dim; ++d) {
                    const double vel = normal(rng);
                    u[(1 + d) * n_nodes + node] = rho * vel;
                    ke += vel * vel;
                }
                u[(nf - 1) * n_nodes + node] = p / (law.gamma - 1.0) + 0.5 * rho * ke;
                break;
            }
        }
    }
    return u;
}

}  // namespace fluxjac
