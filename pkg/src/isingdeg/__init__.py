"""Exact degeneracy toolkit for translation-invariant Ising models on finite abelian groups."""

from .blocks import (
    BlockProfile,
    RigidityReport,
    SignedMultiset,
    blocks_of,
    delta_from_profile,
    laplacian,
    laplacian_multiset,
    reconstruct_from_delta,
    subset_sum_injective,
    verify_four_block_rigidity,
)
from .constructions import (
    DifferenceSet,
    FieldSpec,
    config_from_subset,
    euler_phi,
    is_perfect_difference_set,
    legendre_config,
    periodic_lift,
    product_config,
    reduced_difference_sets,
    singer_difference_set,
)
from .correlation import (
    CorrelationVector,
    ExtendedCorrelation,
    Interaction,
    SpinConfig,
    correlate,
    correlate_fast,
    energy,
    even_projection,
    extended_correlate,
    fourier_power_check,
)
from .degeneracy import (
    DEFAULT_BOUND,
    EnumerationBoundError,
    MsdRow,
    ProbeResult,
    SurveyRow,
    average_dsym_over_sym,
    d_stab,
    fiber,
    fiber_counts,
    generic_j_probe,
    image_size,
    j_degeneracy,
    msd,
    msd_csv,
    survey,
    survey_csv,
)
from .groups import (
    Automorphism,
    GroupElement,
    GroupFormatError,
    GroupSpec,
    QuotientMap,
    automorphisms,
    parse_group_spec,
    quotient_map,
    subgroup_span,
)
from .substitution import (
    ReversalReport,
    SubstitutionWord,
    flatten,
    reverse_word,
    substitute,
    verify_reversal_identity,
    word,
)
from .symmetry import (
    Orbit,
    SymElement,
    act_phi,
    act_psi_config,
    act_psi_corr,
    all_sym_elements,
    canonical,
    d_sym,
    joint_orbit,
    orbit,
    stabilizer,
)

__all__ = [name for name in dir() if not name.startswith("_")]
