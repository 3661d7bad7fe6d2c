#pragma once

#include <functional>
#include <random>
#include <string>

#include "fluxjac/autodiff/dual.hpp"
#include "fluxjac/linalg/dense.hpp"
#include "fluxjac/semidiscrete/system.hpp"

namespace fluxjac {

// A residual that can be evaluated in plain doubles and in single-tangent
// dual numbers, so it can be differentiated without knowing its internals.
struct DifferentiableResidual {
    std::function<std::vector<double>(std::span<const double>)> eval;
    std::function<std::vector<Dual<1>>(std::span<const Dual<1>>)> eval_dual;
};

DifferentiableResidual make_residual_oracle(const SemiDiscreteSystem& sys, double t = 0.0);

// Dense Jacobian by forward AD applied directly to the residual, one unit
// seed per input.
DenseMatrix ad_jacobian(const DifferentiableResidual& r, std::span<const double> u);

// Dense Jacobian by central finite differences with
// h = cbrt(eps) * max(|u_j|, 1).
DenseMatrix fd_jacobian(const std::function<std::vector<double>(std::span<const double>)>& r,
                        std::span<const double> u);

struct OracleReport {
    std::string name;
    std::string method = "ad";
    double frobenius_abs = 0.0;
    double frobenius_rel = 0.0;
    double time_analytic = 0.0;   // seconds
    double time_oracle = 0.0;
    double time_residual = 0.0;
    bool pass = false;
};

// Random-matrix verification of the Jacobian formulas: 25x25 random skew
// operators with random admissible states for the entropy conservative
// fluxes of Burgers, 2D shallow water, and 3D Euler, plus the three
// Lax-Friedrichs cases on random symmetric operators with a random unit
// normal.  Passes when the relative Frobenius difference against the AD
// oracle is at most 1e-10.
std::vector<OracleReport> verify_table1(unsigned long seed);

// Library-side random admissible states (positive fields uniform on (0,1),
// the rest standard normal), field-major over n_nodes.
std::vector<double> random_admissible_field(const ConservationLaw& law, int n_nodes,
                                            std::mt19937_64& rng);

}  // namespace fluxjac
