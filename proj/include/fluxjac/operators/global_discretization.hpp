#pragma once

#include <optional>
#include <vector>

#include "fluxjac/fluxes/conservation_law.hpp"
#include "fluxjac/linalg/sparse_operator.hpp"
#include "fluxjac/operators/boundary.hpp"
#include "fluxjac/operators/reference_element.hpp"

namespace fluxjac {

enum class SchemeKind { fv, dgsem, dgsem2d, modal };

// One coordinate direction of a collocated discretization: the global skew
// operator plus the symmetric interface pattern used by dissipation terms.
struct DirectionOperator {
    SparseOperator q;
    SparseOperator b_interface;
    double normal[3] = {1.0, 0.0, 0.0};
};

// Mesh-wide operators acting on nodal values (collocated) or on stacked
// (volume, face) quadrature values per element (modal).
struct GlobalDiscretization {
    ConservationLaw law;
    SchemeKind scheme = SchemeKind::fv;
    int degree = 0;
    int kx = 1, ky = 1;
    double hx = 0.0, hy = 0.0;
    bool periodic = true;

    // ---- collocated schemes ----
    std::vector<DirectionOperator> dirs;
    std::vector<double> mass;  // diagonal M_Omega over nodes
    std::vector<double> x, y;  // node coordinates
    std::optional<BoundaryPolicy> boundary;
    int left_node = -1, right_node = -1;

    // ---- modal scheme (1D) ----
    ReferenceElement elem;       // carries V, Vf, P, Qh, ...
    SparseOperator modal_q;      // global skew on interleaved (vol, face) values
    SparseOperator modal_b;      // face-face interface couplings
    std::vector<double> coeff_mass;  // J_k per element (M-hat is handled per element)
    std::vector<double> xq;          // volume quadrature coordinates, element-major

    bool is_modal() const { return scheme == SchemeKind::modal; }
    int n_dirs() const { return static_cast<int>(dirs.size()); }

    // Solution vector length per field: nodes for collocated schemes,
    // coefficients for the modal scheme.
    int n_per_field() const;
    // Total solution length, field-major.
    int n_dof() const { return law.n_fields * n_per_field(); }
    // Quadrature-space length per field for the modal scheme.
    int n_quad_total() const { return kx * (elem.n_q + elem.n_f); }
};

// Periodic finite volume discretization of [-1, 1] with K cells.
GlobalDiscretization fv_periodic(int k, const ConservationLaw& law);

// Multi-element collocated SBP assembly on [-1, 1].
GlobalDiscretization assemble_global_periodic(const ReferenceElement& elem, int k,
                                              const ConservationLaw& law);
GlobalDiscretization assemble_global_nonperiodic(const ReferenceElement& elem, int k,
                                                 const BoundaryPolicy& bc,
                                                 const ConservationLaw& law);

// Modal (hybridized) assembly, periodic.
GlobalDiscretization assemble_global_modal(const ReferenceElement& modal_elem, int k,
                                           const ConservationLaw& law);

// Uniform periodic tensor-product quadrilateral mesh of [-1, 1]^2 with
// constant geometric factors.
GlobalDiscretization tensor2d_affine(const ReferenceElement& elem, int kx, int ky,
                                     const ConservationLaw& law);

}  // namespace fluxjac
