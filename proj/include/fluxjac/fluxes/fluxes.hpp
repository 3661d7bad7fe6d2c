#pragma once

#include <cmath>
#include <span>

#include "fluxjac/autodiff/dual.hpp"
#include "fluxjac/fluxes/conservation_law.hpp"

namespace fluxjac {

// States below this in density, pressure, or water height are rejected.
inline constexpr double kAdmissibleTol = 1e-12;

// Double counterparts of the dual-number math helpers, so flux code can be
// written once for both scalar types with unqualified calls.
inline double abs(double x) { return std::abs(x); }
inline double max(double a, double b) { return a > b ? a : b; }
inline double pow(double a, double b) { return std::pow(a, b); }

// Logarithmic mean (b - a)/(log b - log a), with the even-power series of
// the stable expansion when the arguments are close: with f = (z-1)/(z+1),
// z = a/b, the mean is (a+b)/2 / (1 + u/3 + u^2/5 + u^3/7), u = f^2.
template <class T>
T logmean(const T& a, const T& b) {
    const T zeta = a / b;
    const T f = (zeta - 1.0) / (zeta + 1.0);
    const T u = f * f;
    if (value(u) < 1e-4) {
        return (a + b) * 0.5 / (1.0 + u * (1.0 / 3.0) + u * u * (1.0 / 5.0) +
                                u * u * u * (1.0 / 7.0));
    }
    using std::log;
    return (a - b) / (log(a) - log(b));
}

inline double logmean_checked(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw DomainError("logmean requires positive arguments");
    return logmean(a, b);
}

template <class T>
T averaged(const T& a, const T& b) { return (a + b) * 0.5; }

// ---------------------------------------------------------------------------
// Burgers, flux u^2/2 in x (zero in y for the 2D variant).

template <class T>
T burgers_flux_ec(const T& ul, const T& ur) {
    return (ul * ul + ur * ur + ul * ur) * (1.0 / 6.0);
}

// ---------------------------------------------------------------------------
// Shallow water, fields (h, hu[, hv]).

template <class T>
void swe_flux_ec(int dim, int dir, std::span<const T> ul, std::span<const T> ur,
                 double gravity, std::span<T> out) {
    const T hl = ul[0], hr = ur[0];
    const T vel_l = ul[1] / hl, vel_r = ur[1] / hr;
    const T hu_avg = averaged(ul[1], ur[1]);
    const T u_avg = averaged(vel_l, vel_r);
    const T hh = hl * hr * (0.5 * gravity);
    if (dim == 1) {
        out[0] = hu_avg;
        out[1] = hu_avg * u_avg + hh;
        return;
    }
    const T w_l = ul[2] / hl, w_r = ur[2] / hr;
    const T hv_avg = averaged(ul[2], ur[2]);
    const T v_avg = averaged(w_l, w_r);
    if (dir == 0) {
        out[0] = hu_avg;
        out[1] = hu_avg * u_avg + hh;
        out[2] = hu_avg * v_avg;
    } else {
        out[0] = hv_avg;
        out[1] = hv_avg * u_avg;
        out[2] = hv_avg * v_avg + hh;
    }
}

// ---------------------------------------------------------------------------
// Compressible Euler, fields (rho, rho u_1..u_d, E), kinetic energy
// preserving and entropy conservative two-point flux.

template <class T>
void euler_flux_ec(int dim, int dir, std::span<const T> ul, std::span<const T> ur,
                   double gamma, std::span<T> out) {
    const int n = dim + 2;
    const T rho_l = ul[0], rho_r = ur[0];
    T vel_l[3], vel_r[3], vel_avg[3];
    T ke_l(0.0), ke_r(0.0), u2_avg(0.0);
    for (int d = 0; d < dim; ++d) {
        vel_l[d] = ul[1 + d] / rho_l;
        vel_r[d] = ur[1 + d] / rho_r;
        vel_avg[d] = averaged(vel_l[d], vel_r[d]);
        ke_l += vel_l[d] * vel_l[d];
        ke_r += vel_r[d] * vel_r[d];
        u2_avg += vel_l[d] * vel_r[d];
    }
    const T p_l = (ul[n - 1] - rho_l * ke_l * 0.5) * (gamma - 1.0);
    const T p_r = (ur[n - 1] - rho_r * ke_r * 0.5) * (gamma - 1.0);
    const T beta_l = rho_l / (p_l * 2.0);
    const T beta_r = rho_r / (p_r * 2.0);

    const T rho_log = logmean(rho_l, rho_r);
    const T beta_log = logmean(beta_l, beta_r);
    const T p_avg = averaged(rho_l, rho_r) / (averaged(beta_l, beta_r) * 2.0);
    const T e_avg = rho_log / (beta_log * (2.0 * (gamma - 1.0))) + rho_log * u2_avg * 0.5;

    const T fn = rho_log * vel_avg[dir];
    out[0] = fn;
    for (int d = 0; d < dim; ++d) out[1 + d] = fn * vel_avg[d];
    out[1 + dir] += p_avg;
    out[n - 1] = (e_avg + p_avg) * vel_avg[dir];
}

// ---------------------------------------------------------------------------
// Law-generic dispatch.

template <class T>
void flux_ec(const ConservationLaw& law, int dir, std::span<const T> ul,
             std::span<const T> ur, std::span<T> out) {
    switch (law.kind) {
        case LawKind::burgers:
            out[0] = dir == 0 ? burgers_flux_ec(ul[0], ur[0]) : T(0.0);
            return;
        case LawKind::shallow_water:
            swe_flux_ec(law.dim, dir, ul, ur, law.gravity, out);
            return;
        case LawKind::euler:
            euler_flux_ec(law.dim, dir, ul, ur, law.gamma, out);
            return;
    }
}

template <class T>
void flux_physical(const ConservationLaw& law, int dir, std::span<const T> u,
                   std::span<T> out) {
    switch (law.kind) {
        case LawKind::burgers:
            out[0] = dir == 0 ? u[0] * u[0] * 0.5 : T(0.0);
            return;
        case LawKind::shallow_water: {
            const T h = u[0];
            const T pressure = h * h * (0.5 * law.gravity);
            const T mdir = u[1 + dir];
            out[0] = mdir;
            for (int d = 0; d < law.dim; ++d) out[1 + d] = mdir * (u[1 + d] / h);
            out[1 + dir] += pressure;
            return;
        }
        case LawKind::euler: {
            const int n = law.dim + 2;
            const T rho = u[0];
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) ke += (u[1 + d] / rho) * (u[1 + d] / rho);
            const T p = (u[n - 1] - rho * ke * 0.5) * (law.gamma - 1.0);
            const T vdir = u[1 + dir] / rho;
            out[0] = u[1 + dir];
            for (int d = 0; d < law.dim; ++d) out[1 + d] = u[1 + d] * vdir;
            out[1 + dir] += p;
            out[n - 1] = (u[n - 1] + p) * vdir;
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Entropy, entropy variables, and their inverses.
//
// Euler uses S(u) = -rho s / (gamma - 1) with s = log(p / rho^gamma); the
// matching entropy potential is psi_i = rho u_i.

template <class T>
T entropy(const ConservationLaw& law, std::span<const T> u) {
    switch (law.kind) {
        case LawKind::burgers:
            return u[0] * u[0] * 0.5;
        case LawKind::shallow_water: {
            T m2(0.0);
            for (int d = 0; d < law.dim; ++d) m2 += u[1 + d] * u[1 + d];
            return m2 / u[0] * 0.5 + u[0] * u[0] * (0.5 * law.gravity);
        }
        case LawKind::euler: {
            const int n = law.dim + 2;
            const T rho = u[0];
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) ke += (u[1 + d] / rho) * (u[1 + d] / rho);
            const T p = (u[n - 1] - rho * ke * 0.5) * (law.gamma - 1.0);
            using std::log;
            const T s = log(p) - law.gamma * log(rho);
            return rho * s * (-1.0 / (law.gamma - 1.0));
        }
    }
    return T(0.0);
}

template <class T>
void entropy_vars(const ConservationLaw& law, std::span<const T> u, std::span<T> v) {
    switch (law.kind) {
        case LawKind::burgers:
            v[0] = u[0];
            return;
        case LawKind::shallow_water: {
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) {
                v[1 + d] = u[1 + d] / u[0];
                ke += v[1 + d] * v[1 + d];
            }
            v[0] = law.gravity * u[0] - ke * 0.5;
            return;
        }
        case LawKind::euler: {
            const int n = law.dim + 2;
            const double g = law.gamma;
            const T rho = u[0];
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) ke += (u[1 + d] / rho) * (u[1 + d] / rho);
            const T p = (u[n - 1] - rho * ke * 0.5) * (g - 1.0);
            using std::log;
            const T s = log(p) - g * log(rho);
            const T beta = rho / (p * 2.0);
            v[0] = (g - s) / (g - 1.0) - beta * ke;
            for (int d = 0; d < law.dim; ++d) v[1 + d] = beta * (u[1 + d] / rho) * 2.0;
            v[n - 1] = beta * (-2.0);
            return;
        }
    }
}

template <class T>
void cons_vars(const ConservationLaw& law, std::span<const T> v, std::span<T> u) {
    switch (law.kind) {
        case LawKind::burgers:
            u[0] = v[0];
            return;
        case LawKind::shallow_water: {
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) ke += v[1 + d] * v[1 + d];
            const T h = (v[0] + ke * 0.5) / law.gravity;
            u[0] = h;
            for (int d = 0; d < law.dim; ++d) u[1 + d] = h * v[1 + d];
            return;
        }
        case LawKind::euler: {
            const int n = law.dim + 2;
            const double g = law.gamma;
            // Work in the (gamma - 1)-scaled variables, in which
            // w_{1+d} = rho u_d / (rho e) and w_n = -rho / (rho e).
            T w[5];
            for (int i = 0; i < n; ++i) w[i] = v[i] * (g - 1.0);
            T ke(0.0);
            for (int d = 0; d < law.dim; ++d) ke += w[1 + d] * w[1 + d];
            const T s = g - w[0] + ke / (w[n - 1] * 2.0);
            using std::exp;
            const T rho_e = pow((g - 1.0) / pow(-w[n - 1], g), 1.0 / (g - 1.0)) *
                            exp(s * (-1.0 / (g - 1.0)));
            u[0] = rho_e * (-1.0) * w[n - 1];
            for (int d = 0; d < law.dim; ++d) u[1 + d] = rho_e * w[1 + d];
            u[n - 1] = rho_e * (1.0 - ke / (w[n - 1] * 2.0));
            return;
        }
    }
}

// Entropy potential psi_dir; exists to state Tadmor's identity
// (v_L - v_R)^T f_S = psi_L - psi_R.
inline double entropy_potential(const ConservationLaw& law, int dir,
                                std::span<const double> u) {
    switch (law.kind) {
        case LawKind::burgers:
            return dir == 0 ? u[0] * u[0] * u[0] / 6.0 : 0.0;
        case LawKind::shallow_water:
            return 0.5 * law.gravity * u[0] * u[1 + dir];
        case LawKind::euler:
            return u[1 + dir];
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Admissibility and wavespeeds.

inline bool admissible(const ConservationLaw& law, std::span<const double> u) {
    switch (law.kind) {
        case LawKind::burgers:
            return std::isfinite(u[0]);
        case LawKind::shallow_water:
            return u[0] > kAdmissibleTol;
        case LawKind::euler: {
            const int n = law.dim + 2;
            if (!(u[0] > kAdmissibleTol)) return false;
            double ke = 0.0;
            for (int d = 0; d < law.dim; ++d) ke += (u[1 + d] / u[0]) * (u[1 + d] / u[0]);
            const double p = (u[n - 1] - u[0] * ke * 0.5) * (law.gamma - 1.0);
            return p > kAdmissibleTol;
        }
    }
    return false;
}

// Upper bound on the 1D wavespeed along `normal`: |u.n| + c.
template <class T>
T wavespeed(const ConservationLaw& law, std::span<const T> u, const double* normal) {
    using std::sqrt;
    switch (law.kind) {
        case LawKind::burgers:
            return abs(u[0] * normal[0]);
        case LawKind::shallow_water: {
            T un(0.0);
            for (int d = 0; d < law.dim; ++d) un += (u[1 + d] / u[0]) * normal[d];
            return abs(un) + sqrt(u[0] * law.gravity);
        }
        case LawKind::euler: {
            const int n = law.dim + 2;
            T un(0.0), ke(0.0);
            for (int d = 0; d < law.dim; ++d) {
                const T vel = u[1 + d] / u[0];
                un += vel * normal[d];
                ke += vel * vel;
            }
            const T p = (u[n - 1] - u[0] * ke * 0.5) * (law.gamma - 1.0);
            return abs(un) + sqrt(p / u[0] * law.gamma);
        }
    }
    return T(0.0);
}

}  // namespace fluxjac
