#include "fluxjac/timestepping/integrators.hpp"

#include <cmath>

namespace fluxjac {

TimeMethod time_method_from_name(const std::string& name) {
    if (name == "tdrk1") return TimeMethod::tdrk1;
    if (name == "tdrk2") return TimeMethod::tdrk2;
    if (name == "tdrk3") return TimeMethod::tdrk3;
    if (name == "rk45") return TimeMethod::rk45;
    if (name == "implicit-midpoint") return TimeMethod::implicit_midpoint;
    throw ConfigError("unknown time integrator: " + name);
}

std::string time_method_name(TimeMethod m) {
    switch (m) {
        case TimeMethod::tdrk1: return "tdrk1";
        case TimeMethod::tdrk2: return "tdrk2";
        case TimeMethod::tdrk3: return "tdrk3";
        case TimeMethod::rk45: return "rk45";
        case TimeMethod::implicit_midpoint: return "implicit-midpoint";
    }
    return "unknown";
}

double compute_dt(double h_min, int degree, double cfl) {
    if (cfl <= 0.0) throw ConfigError("cfl must be positive");
    const double c_n = (degree + 1) * (degree + 2) / 2.0;
    return cfl * h_min / c_n;
}

std::vector<double> rhs(const SemiDiscreteSystem& sys, std::span<const double> u, double t) {
    auto r = residual(sys, u, t);
    for (auto& x : r) x = -x;
    return solve_mass(sys, r);
}

namespace {

// df/dt at fixed u: the analytic time derivative of the source, lifted the
// same way the source enters the rhs.
std::vector<double> rhs_time_derivative(const SemiDiscreteSystem& sys, double t) {
    std::vector<double> out(sys.n_dof(), 0.0);
    if (!sys.source || !sys.source->time_derivative) return out;
    const auto& d = sys.disc;
    const int nf = sys.law().n_fields;
    if (!d.is_modal()) {
        sys.source->time_derivative(t, std::span<double>(out));
        return out;
    }
    const auto& el = d.elem;
    const int np = el.n_p, nq = el.n_q;
    const int n = d.n_per_field();
    std::vector<double> s(static_cast<std::size_t>(nf) * d.kx * nq);
    sys.source->time_derivative(t, std::span<double>(s));
    std::vector<double> ws(nq), proj(np);
    std::vector<double> weak(out.size(), 0.0);
    for (int e = 0; e < d.kx; ++e)
        for (int f = 0; f < nf; ++f) {
            for (int q = 0; q < nq; ++q) ws[q] = el.wq[q] * s[f * (d.kx * nq) + e * nq + q];
            detail::matvec_transpose(el.v, ws.data(), proj.data());
            for (int m = 0; m < np; ++m)
                weak[f * n + e * np + m] = d.coeff_mass[e] * proj[m];
        }
    return solve_mass(sys, weak);
}

}  // namespace

std::vector<double> second_derivative(const SemiDiscreteSystem& sys,
                                      std::span<const double> u, double t) {
    const auto f = rhs(sys, u, t);
    // (df/du) f = -M^{-1} (dr/du) f
    auto jrf = jacobian_vector_product(sys, u, f);
    for (auto& x : jrf) x = -x;
    auto g = solve_mass(sys, jrf);
    const auto ft = rhs_time_derivative(sys, t);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += ft[i];
    return g;
}

std::vector<double> step_tdrk(int stages, const SemiDiscreteSystem& sys,
                              std::span<const double> u, double t, double dt) {
    const std::size_t n = u.size();
    std::vector<double> out(u.begin(), u.end());
    const auto f = rhs(sys, u, t);
    const auto g1 = second_derivative(sys, u, t);

    if (stages == 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] += dt * f[i] + 0.5 * dt * dt * g1[i];
        return out;
    }
    if (stages == 2) {
        std::vector<double> y2(n);
        for (std::size_t i = 0; i < n; ++i)
            y2[i] = u[i] + 0.5 * dt * f[i] + dt * dt / 8.0 * g1[i];
        const auto g2 = second_derivative(sys, y2, t + 0.5 * dt);
        for (std::size_t i = 0; i < n; ++i)
            out[i] += dt * f[i] + dt * dt * (g1[i] / 6.0 + g2[i] / 3.0);
        return out;
    }
    if (stages == 3) {
        // three-stage fifth-order scheme with c3 = 2/3; the remaining
        // coefficients follow from the order conditions
        const double c2 = 1.0 / 5.0, c3 = 2.0 / 3.0;
        const double a21 = c2 * c2 / 2.0;
        const double a32 = 7.0 / 27.0, a31 = c3 * c3 / 2.0 - a32;
        const double b1 = 1.0 / 24.0, b2 = 25.0 / 84.0, b3 = 9.0 / 56.0;
        std::vector<double> y2(n), y3(n);
        for (std::size_t i = 0; i < n; ++i) y2[i] = u[i] + c2 * dt * f[i] + dt * dt * a21 * g1[i];
        const auto g2 = second_derivative(sys, y2, t + c2 * dt);
        for (std::size_t i = 0; i < n; ++i)
            y3[i] = u[i] + c3 * dt * f[i] + dt * dt * (a31 * g1[i] + a32 * g2[i]);
        const auto g3 = second_derivative(sys, y3, t + c3 * dt);
        for (std::size_t i = 0; i < n; ++i)
            out[i] += dt * f[i] + dt * dt * (b1 * g1[i] + b2 * g2[i] + b3 * g3[i]);
        return out;
    }
    throw ConfigError("tdrk supports 1, 2, or 3 stages");
}

std::vector<double> step_rk45(const SemiDiscreteSystem& sys, std::span<const double> u,
                              double t, double dt) {
    // Carpenter-Kennedy five-stage fourth-order low-storage coefficients
    static const double a[5] = {0.0,
                                -567301805773.0 / 1357537059087.0,
                                -2404267990393.0 / 2016746695238.0,
                                -3550918686646.0 / 2091501179385.0,
                                -1275806237668.0 / 842570457699.0};
    static const double b[5] = {1432997174477.0 / 9575080441755.0,
                                5161836677717.0 / 13612068292357.0,
                                1720146321549.0 / 2090206949498.0,
                                3134564353537.0 / 4481467310338.0,
                                2277821191437.0 / 14882151754819.0};
    static const double c[5] = {0.0,
                                1432997174477.0 / 9575080441755.0,
                                2526269341429.0 / 6820363962896.0,
                                2006345519317.0 / 3224310063776.0,
                                2802321613138.0 / 2924317926251.0};
    const std::size_t n = u.size();
    std::vector<double> out(u.begin(), u.end());
    std::vector<double> k(n, 0.0);
    for (int s = 0; s < 5; ++s) {
        const auto f = rhs(sys, out, t + c[s] * dt);
        for (std::size_t i = 0; i < n; ++i) {
            k[i] = a[s] * k[i] + dt * f[i];
            out[i] += b[s] * k[i];
        }
    }
    return out;
}

}  // namespace fluxjac
