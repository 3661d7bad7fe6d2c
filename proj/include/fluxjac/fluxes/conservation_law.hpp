#pragma once

#include <string>

#include "fluxjac/error.hpp"

namespace fluxjac {

enum class LawKind { burgers, shallow_water, euler };

// Immutable descriptor of a system of conservation laws.  All flux and
// entropy-map evaluations are free templated functions keyed on this
// descriptor (see fluxes.hpp) so both double and dual-number arguments go
// through the same code path.
struct ConservationLaw {
    LawKind kind = LawKind::burgers;
    int dim = 1;       // spatial dimension of the flux tuple
    int n_fields = 1;
    double gamma = 1.4;
    double gravity = 1.0;

    static ConservationLaw burgers(int dim = 1);
    static ConservationLaw shallow_water(int dim, double gravity = 1.0);
    static ConservationLaw euler(int dim, double gamma = 1.4);

    // CLI identifiers: burgers, swe1d, swe2d, euler2d, euler3d.
    static ConservationLaw from_name(const std::string& name);
    std::string name() const;
};

}  // namespace fluxjac
