#pragma once

#include <string>

#include "fluxjac/semidiscrete/jacobian.hpp"
#include "fluxjac/semidiscrete/system.hpp"

namespace fluxjac {

enum class TimeMethod { tdrk1, tdrk2, tdrk3, rk45, implicit_midpoint };

TimeMethod time_method_from_name(const std::string& name);
std::string time_method_name(TimeMethod m);

struct TimeIntegratorConfig {
    TimeMethod method = TimeMethod::rk45;
    double cfl = 1.0;
    double dt = 0.0;  // used when > 0, otherwise derived from cfl
    double final_time = 1.0;
    double newton_rtol = 1e-11;
    int newton_max_iter = 25;
};

struct StepReport {
    double time = 0.0;
    double dt = 0.0;
    int newton_iters = 0;
    bool converged = true;
    double entropy = 0.0;
    double energy = 0.0;
    double residual_norm = 0.0;
    std::vector<double> newton_history;  // update norms per iteration
};

// CFL-based time step dt = cfl * h_min / C_N with the degree-dependent
// trace constant C_N = (N+1)(N+2)/2.
double compute_dt(double h_min, int degree, double cfl);

// du/dt = -M^{-1} r(u, t); the source contribution is carried inside the
// residual.
std::vector<double> rhs(const SemiDiscreteSystem& sys, std::span<const double> u, double t);

// d2u/dt2 = (df/du) f + df/dt, with the Jacobian applied matrix-free and
// the source time derivative supplied analytically.
std::vector<double> second_derivative(const SemiDiscreteSystem& sys,
                                      std::span<const double> u, double t);

// Two-derivative Runge-Kutta steps of order 2 (one stage), 4 (two stages),
// and 5 (three stages); `stages` is 1, 2, or 3.
std::vector<double> step_tdrk(int stages, const SemiDiscreteSystem& sys,
                              std::span<const double> u, double t, double dt);

// Low-storage five-stage fourth-order Runge-Kutta step.
std::vector<double> step_rk45(const SemiDiscreteSystem& sys, std::span<const double> u,
                              double t, double dt);

// One implicit midpoint step; Newton on the half-step state with the
// analytic Jacobian.  Non-convergence is reported, not thrown.
struct MidpointResult {
    std::vector<double> u;
    StepReport report;
};
MidpointResult step_implicit_midpoint(const SemiDiscreteSystem& sys,
                                      std::span<const double> u, double t, double dt,
                                      double rtol = 1e-11, int max_iter = 25);

}  // namespace fluxjac
