"""Exact-arithmetic toolkit for integral lattices with finite isometry
actions: covering-lattice models, transfer verification, and
Nielsen-realization verdicts with machine-checkable certificates."""

__version__ = "0.1.0"

from .lattices import (
    Lattice,
    Sublattice,
    direct_sum,
    determinant,
    discriminant_group,
    invariant_tuple,
    is_even,
    make_lattice,
    make_sublattice,
    orthogonal_complement,
    rank_one,
    rescale,
    restrict_form,
    saturate,
    signature,
    standard_lattice,
)
from .shortvec import ShortVectorSet, short_vectors, short_vectors_box
from .isometry import (
    ActionGroup,
    Isometry,
    WeightDecomposition,
    character,
    close_group,
    identity_isometry,
    invariant_sublattice,
    isometry_order,
    isotypic_components,
    make_isometry,
    wedge_square,
    weight_decomposition,
)
from .covers import (
    CoverModel,
    descend_form,
    enriques_lattice,
    enriques_model,
    hilb_model,
    iota_star,
    k3_lattice,
    kummer_model,
    model_by_name,
    multiplication_part,
    transfer_composite,
    wedge_block_lattice,
)
from .realization import (
    EnriquesRealizationReport,
    PositiveThreePlane,
    RealizationReport,
    decide_realization,
    dehn_twist_reflection,
    enriques_realizable,
    find_invariant_positive_3plane,
    lift_group,
    lift_isometry,
    make_plane,
    realization_invariant,
    ricci_flat_implies_complex_witness,
)
from .periods import (
    InvariantLine,
    PeriodVector,
    WeightOneSpace,
    invariant_line,
    make_period_vector,
    period_membership,
    twistor_data,
    weight_one_space,
)
from .fixtures import FixtureResult, fixture_names, run_all, run_fixture
