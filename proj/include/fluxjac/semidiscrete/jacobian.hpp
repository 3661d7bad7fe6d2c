#pragma once

#include "fluxjac/linalg/block_jacobian.hpp"
#include "fluxjac/semidiscrete/residual.hpp"

namespace fluxjac {

// Closed-form Jacobian of the flux-differencing term, per direction, using
// either the right-argument or left-argument flux derivative variant.  The
// two variants produce the same matrix.
BlockJacobian jacobian_collocated(const SemiDiscreteSystem& sys, std::span<const double> u,
                                  JacobianVariant variant = JacobianVariant::right_arg);

// Jacobian of the interface dissipation term alone.
BlockJacobian jacobian_dissipation(const SemiDiscreteSystem& sys, std::span<const double> u,
                                   JacobianVariant variant = JacobianVariant::right_arg);

// Jacobian contribution of the non-periodic boundary term, differentiated
// through the exterior-state policy with AD.
BlockJacobian jacobian_boundary(const SemiDiscreteSystem& sys, std::span<const double> u);

// Assembled Jacobian of the modal scheme on coefficient space:
// Vh^T (theorem blocks at the projected states) [du/dv] Vh P [dv/du] V.
SparseOperator jacobian_modal(const SemiDiscreteSystem& sys, std::span<const double> u_hat);

// Complete analytic Jacobian of residual(sys, u) as one flat field-major
// sparse matrix, dispatching on the scheme kind.
SparseOperator jacobian_flat(const SemiDiscreteSystem& sys, std::span<const double> u);

// Matrix-free product flatten(jacobian) * w; collocated schemes use the
// same Hadamard traversal without forming the matrix.
std::vector<double> jacobian_vector_product(const SemiDiscreteSystem& sys,
                                            std::span<const double> u,
                                            std::span<const double> w);

}  // namespace fluxjac
