#include "fluxjac/fluxes/conservation_law.hpp"

namespace fluxjac {

ConservationLaw ConservationLaw::burgers(int dim) {
    if (dim < 1 || dim > 2) throw ConfigError("burgers supports dim 1 or 2");
    return {LawKind::burgers, dim, 1, 1.4, 1.0};
}

ConservationLaw ConservationLaw::shallow_water(int dim, double gravity) {
    if (dim < 1 || dim > 2) throw ConfigError("shallow water supports dim 1 or 2");
    return {LawKind::shallow_water, dim, dim + 1, 1.4, gravity};
}

ConservationLaw ConservationLaw::euler(int dim, double gamma) {
    if (dim < 2 || dim > 3) throw ConfigError("euler supports dim 2 or 3");
    return {LawKind::euler, dim, dim + 2, gamma, 1.0};
}

ConservationLaw ConservationLaw::from_name(const std::string& name) {
    if (name == "burgers") return burgers(1);
    if (name == "burgers2d") return burgers(2);
    if (name == "swe1d") return shallow_water(1);
    if (name == "swe2d") return shallow_water(2);
    if (name == "euler2d") return euler(2);
    if (name == "euler3d") return euler(3);
    throw ConfigError("unknown law: " + name);
}

std::string ConservationLaw::name() const {
    switch (kind) {
        case LawKind::burgers: return dim == 1 ? "burgers" : "burgers2d";
        case LawKind::shallow_water: return dim == 1 ? "swe1d" : "swe2d";
        case LawKind::euler: return dim == 2 ? "euler2d" : "euler3d";
    }
    return "unknown";
}

}  // namespace fluxjac
