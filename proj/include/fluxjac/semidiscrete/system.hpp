#pragma once

#include <functional>
#include <optional>

#include "fluxjac/fluxes/dissipation.hpp"
#include "fluxjac/operators/global_discretization.hpp"

namespace fluxjac {

// Manufactured-solution source: the "strong form" contribution s(x, t) to
// du/dt, sampled field-major at the solution nodes (collocated schemes) or
// at the volume quadrature points (modal scheme).  TDRK integrators need
// the analytic time derivative as well.
struct Source {
    std::function<void(double, std::span<double>)> value;
    std::function<void(double, std::span<double>)> time_derivative;
};

struct SemiDiscreteSystem {
    GlobalDiscretization disc;
    std::optional<WavespeedPolicy> dissipation;  // Lax-Friedrichs when set
    std::optional<Source> source;

    const ConservationLaw& law() const { return disc.law; }
    int n_dof() const { return disc.n_dof(); }
};

// Global mass matrix over the full field-major dof vector: diagonal for
// collocated schemes, block diagonal (J_k M-hat) for the modal scheme.
SparseOperator mass_matrix(const SemiDiscreteSystem& sys);
std::vector<double> apply_mass(const SemiDiscreteSystem& sys, std::span<const double> v);
std::vector<double> solve_mass(const SemiDiscreteSystem& sys, std::span<const double> v);
// sqrt(v^T M v)
double m_norm(const SemiDiscreteSystem& sys, std::span<const double> v);

// Quadrature approximations of the total entropy and of the M-weighted
// squared norm (the "energy" conserved by entropy conservative Burgers).
double total_entropy(const SemiDiscreteSystem& sys, std::span<const double> u);
double total_energy(const SemiDiscreteSystem& sys, std::span<const double> u);

// Throws InadmissibleStateError naming the first offending node.
void check_admissible(const ConservationLaw& law, std::span<const double> u, int n_nodes);

}  // namespace fluxjac
