"""Executable finite-dimensional operator algebra: spectra, Gelfand theory,
states and the GNS construction, with a quantum particle-in-a-box demo."""

from .algebra import (
    Algebra,
    Element,
    QuotientAlgebra,
    SubspaceBasis,
    algebra_from_generators,
    ambient_element,
    complexify,
    direct_sum_algebras,
    element,
    find_identity,
    full_matrix_algebra,
    ideal_check,
    is_abelian,
    pair_element,
    pair_regular_norm,
    quotient,
    quotient_norm,
    random_element,
    subspace,
    unitization_one_norm,
    unitize,
    unitize_embed,
)
from .gelfand import (
    Character,
    GelfandSpectrumData,
    GkzOutcome,
    char_kernel,
    characters,
    circulant,
    circulant_element,
    conv,
    cyclic_group_algebra,
    gelfand_isometry_report,
    gelfand_transform,
    gkz_witness,
)
from .linalg import adjoint, as_matrix, eig_general, herm_eig, invert, null_basis, op_norm
from .qm import (
    BoxGrid,
    GridState,
    box_eigenstate,
    box_energy,
    cosine_observable,
    eigenstate_functional,
    expectation,
    grid_state,
    momentum_operator,
    phase_shift,
    position_operator,
)
from .spectral import (
    CommutatorReport,
    ElementFlags,
    RadiusTrace,
    SpectrumReport,
    classify,
    commutator_scalar_test,
    exp_element,
    func_calc,
    neumann_inverse,
    poly_apply,
    power_norm_root,
    resolvent,
    spec_symmetry_check,
    spectral_radius_limit,
    spectrum,
    sqrt_positive,
)
from .states import (
    Functional,
    GnsRepresentation,
    Representation,
    State,
    cauchy_schwarz_residual,
    direct_sum_reps,
    functional,
    functional_norm,
    gns,
    gram_matrix,
    is_positive_functional,
    make_state,
    norming_state,
    trace_state,
    universal_rep,
    vector_state,
)

__version__ = "0.1.0"
