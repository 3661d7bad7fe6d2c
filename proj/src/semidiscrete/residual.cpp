#include "fluxjac/semidiscrete/residual.hpp"

namespace fluxjac {

// Explicit instantiations for the scalar types the oracles exercise.
template std::vector<double> residual_t<double>(const SemiDiscreteSystem&,
                                                std::span<const double>, double);
template std::vector<Dual<1>> residual_t<Dual<1>>(const SemiDiscreteSystem&,
                                                  std::span<const Dual<1>>, double);
template std::vector<double> entropy_project<double>(const SemiDiscreteSystem&,
                                                     std::span<const double>);

}  // namespace fluxjac
