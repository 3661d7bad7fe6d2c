#pragma once

#include "fluxjac/autodiff/flux_derivatives.hpp"
#include "fluxjac/fluxes/fluxes.hpp"
#include "fluxjac/linalg/dense.hpp"

namespace fluxjac {

// Jacobian dv/du of the entropy-variable map via one dual sweep.  Serves as
// the oracle for the closed-form matrices and as the general-law fallback.
inline DenseMatrix dvdu_ad(const ConservationLaw& law, std::span<const double> u) {
    const int n = law.n_fields;
    DenseMatrix jac(n, n);
    with_tangent_width(n, [&](auto width) {
        constexpr int W = decltype(width)::value;
        std::array<Dual<W>, W> ud, vd;
        for (int i = 0; i < n; ++i) ud[i] = Dual<W>::seeded(u[i], i);
        entropy_vars(law, std::span<const Dual<W>>(ud.data(), n),
                     std::span<Dual<W>>(vd.data(), n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac(i, j) = vd[i].dot[j];
    });
    return jac;
}

// dv/du; for 2D Euler the closed form in the (gamma - 1)-scaled working
// variables w = (gamma - 1) v, with k = (w2^2 + w3^2)/(2 w4).
inline DenseMatrix dvdu(const ConservationLaw& law, std::span<const double> u) {
    if (law.kind == LawKind::euler && law.dim == 2) {
        const double g = law.gamma;
        double vv[4];
        entropy_vars(law, u, std::span<double>(vv, 4));
        const double w2 = (g - 1.0) * vv[1], w3 = (g - 1.0) * vv[2], w4 = (g - 1.0) * vv[3];
        const double rho = u[0];
        const double ke = 0.5 * (u[1] * u[1] + u[2] * u[2]) / rho;
        const double rho_e = u[3] - ke;
        const double k = 0.5 * (w2 * w2 + w3 * w3) / w4;
        DenseMatrix m(4, 4);
        m << g + k * k, k * w2, k * w3, (k + 1.0) * w4,
            k * w2, w2 * w2 - w4, w2 * w3, w2 * w4,
            k * w3, w2 * w3, w3 * w3 - w4, w3 * w4,
            (k + 1.0) * w4, w2 * w4, w3 * w4, w4 * w4;
        return m * (-1.0 / (rho_e * w4 * (g - 1.0)));
    }
    return dvdu_ad(law, u);
}

// Jacobian du/dv evaluated at entropy variables v.  For 2D Euler this is
// the closed-form symmetric matrix in primitive quantities; other laws
// differentiate the inverse map directly.
inline DenseMatrix dudv_at_v(const ConservationLaw& law, std::span<const double> v) {
    const int n = law.n_fields;
    if (law.kind == LawKind::euler && law.dim == 2) {
        double u[4];
        cons_vars(law, v, std::span<double>(u, 4));
        const double g = law.gamma;
        const double rho = u[0];
        const double vx = u[1] / rho, vy = u[2] / rho;
        const double energy = u[3];
        const double p = (energy - 0.5 * rho * (vx * vx + vy * vy)) * (g - 1.0);
        const double c2 = g * p / rho;
        const double enthalpy = c2 / (g - 1.0) + 0.5 * (vx * vx + vy * vy);
        DenseMatrix m(4, 4);
        m << rho, rho * vx, rho * vy, energy,
            rho * vx, rho * vx * vx + p, rho * vx * vy, rho * vx * enthalpy,
            rho * vy, rho * vx * vy, rho * vy * vy + p, rho * vy * enthalpy,
            energy, rho * vx * enthalpy, rho * vy * enthalpy,
            rho * enthalpy * enthalpy - c2 * p / (g - 1.0);
        return m;
    }
    DenseMatrix jac(n, n);
    with_tangent_width(n, [&](auto width) {
        constexpr int W = decltype(width)::value;
        std::array<Dual<W>, W> vd, ud;
        for (int i = 0; i < n; ++i) vd[i] = Dual<W>::seeded(v[i], i);
        cons_vars(law, std::span<const Dual<W>>(vd.data(), n),
                  std::span<Dual<W>>(ud.data(), n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac(i, j) = ud[i].dot[j];
    });
    return jac;
}

inline DenseMatrix dudv(const ConservationLaw& law, std::span<const double> u) {
    std::vector<double> v(law.n_fields);
    entropy_vars(law, u, std::span<double>(v));
    return dudv_at_v(law, std::span<const double>(v));
}

}  // namespace fluxjac
