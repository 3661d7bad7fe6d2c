#pragma once

#include <span>
#include <vector>

#include "fluxjac/fluxes/conservation_law.hpp"

namespace fluxjac {

enum class BoundaryKind { dirichlet, reflective, extrapolated };

// Supplies exterior states at the two domain endpoints of a non-periodic
// 1D discretization.
struct BoundaryPolicy {
    BoundaryKind kind = BoundaryKind::extrapolated;
    std::vector<double> left_value;   // dirichlet states
    std::vector<double> right_value;

    static BoundaryPolicy dirichlet(std::vector<double> left, std::vector<double> right) {
        return {BoundaryKind::dirichlet, std::move(left), std::move(right)};
    }
    static BoundaryPolicy reflective() { return {BoundaryKind::reflective, {}, {}}; }
    static BoundaryPolicy extrapolated() { return {BoundaryKind::extrapolated, {}, {}}; }
};

// Exterior state as a (differentiable) function of the interior endpoint
// state; dual arguments flow through so the boundary term can be
// differentiated with AD.
template <class T>
void exterior_state(const BoundaryPolicy& bc, const ConservationLaw& law, bool left,
                    std::span<const T> interior, std::span<T> exterior) {
    const int n = law.n_fields;
    switch (bc.kind) {
        case BoundaryKind::dirichlet: {
            const auto& val = left ? bc.left_value : bc.right_value;
            for (int i = 0; i < n; ++i) exterior[i] = T(val[i]);
            return;
        }
        case BoundaryKind::reflective:
            for (int i = 0; i < n; ++i) exterior[i] = interior[i];
            if (law.kind == LawKind::burgers) {
                exterior[0] = -interior[0];
            } else {
                exterior[1] = -interior[1];  // normal (x) momentum flips
            }
            return;
        case BoundaryKind::extrapolated:
            for (int i = 0; i < n; ++i) exterior[i] = interior[i];
            return;
    }
}

}  // namespace fluxjac
