#pragma once

#include <cmath>

#include "fluxjac/semidiscrete/system.hpp"

namespace fluxjac {

// Manufactured solutions on [-1, 1] with every solution component of the
// form sin(k t) sin(pi x) (water height offset by 2 to stay positive),
// together with analytically coded source terms and their time
// derivatives.

struct ManufacturedBurgers {
    double k;

    double exact(double x, double t) const { return std::sin(k * t) * std::sin(M_PI * x); }

    // s = u_t + u u_x
    double source(double x, double t) const {
        const double s = std::sin(M_PI * x), c = std::cos(M_PI * x);
        const double st = std::sin(k * t), ct = std::cos(k * t);
        return k * ct * s + st * st * M_PI * s * c;
    }

    double source_dt(double x, double t) const {
        const double s = std::sin(M_PI * x), c = std::cos(M_PI * x);
        const double st = std::sin(k * t), ct = std::cos(k * t);
        return -k * k * st * s + 2.0 * k * st * ct * M_PI * s * c;
    }
};

// 1D shallow water with h = 2 + sin(kt) sin(pi x) and hu = sin(kt) sin(pi x).
struct ManufacturedSwe1d {
    double k;
    double gravity;

    double exact_h(double x, double t) const {
        return 2.0 + std::sin(k * t) * std::sin(M_PI * x);
    }
    double exact_hu(double x, double t) const {
        return std::sin(k * t) * std::sin(M_PI * x);
    }

    // s1 = h_t + (hu)_x, s2 = (hu)_t + (hu^2/h + g h^2 / 2)_x
    void source(double x, double t, double& s1, double& s2) const {
        const double s = std::sin(M_PI * x), sx = M_PI * std::cos(M_PI * x);
        const double ct = std::cos(k * t), st = std::sin(k * t);
        const double m = st * s, mx = st * sx, mt = k * ct * s;
        const double h = 2.0 + m, hx = mx, ht = mt;
        s1 = ht + mx;
        s2 = mt + (2.0 * m * mx * h - m * m * hx) / (h * h) + gravity * h * hx;
    }

    void source_dt(double x, double t, double& s1t, double& s2t) const {
        const double s = std::sin(M_PI * x), sx = M_PI * std::cos(M_PI * x);
        const double ct = std::cos(k * t), st = std::sin(k * t);
        const double m = st * s, mx = st * sx;
        const double mt = k * ct * s, mxt = k * ct * sx, mtt = -k * k * st * s;
        const double h = 2.0 + m, hx = mx, ht = mt, hxt = mxt;
        s1t = mtt + mxt;
        // d/dt of (2 m mx h - m^2 hx)/h^2 + g h hx, chain rule term by term
        const double num = 2.0 * m * mx * h - m * m * hx;
        const double num_t =
            2.0 * (mt * mx + m * mxt) * h + 2.0 * m * mx * ht - (2.0 * m * mt * hx + m * m * hxt);
        s2t = mtt + (num_t * h * h - num * 2.0 * h * ht) / (h * h * h * h) +
              gravity * (ht * hx + h * hxt);
    }
};

// Attaches the manufactured source to a system; points are the collocation
// nodes or (modal) the volume quadrature points.
void attach_burgers_source(SemiDiscreteSystem& sys, double k_freq);
void attach_swe1d_source(SemiDiscreteSystem& sys, double k_freq);

// Nodal / coefficient representation of the exact solution at time t.
std::vector<double> manufactured_initial(const SemiDiscreteSystem& sys, double k_freq,
                                         double t);

// L2 error of the numerical solution against the manufactured solution at
// time t, by over-integrated Gauss quadrature.
double manufactured_l2_error(const SemiDiscreteSystem& sys, std::span<const double> u,
                             double k_freq, double t);

}  // namespace fluxjac
