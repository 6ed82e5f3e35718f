"""Exact-arithmetic toolkit for difference sets, B_h sequences, and the
lattice codes they generate: constructions, exhaustive searches, packing and
tiling certifiers, syndrome decoders, bound evaluation, and a channel
simulator.
"""

from .algebra import (
    AbelianGroup,
    FiniteField,
    cyclic,
    gf_construct,
    group_make,
    hermite_normal_form,
    is_prime,
    is_prime_power,
    prime_power_decompose,
    quotient_group,
    smith_normal_form,
)
from .channel import ChannelConfig, TrialStats, apply_errors, error_support, make_rng, run_simulation
from .codes import (
    DecodeResult,
    FiniteCode,
    LatticeCode,
    SyndromeTable,
    build_syndrome_table,
    decode_radius1,
    decode_radius_r,
    dual_basis,
    encode,
    extract_difference_set,
    finite_code,
    generator_matrix_cyclic,
    lattice_from_bh_set,
    lattice_from_difference_set,
    lattice_from_set,
    perfect_code_A1,
    perfect_code_A2,
    syndrome,
    tiling_lattice_S2,
)
from .errors import (
    EnumerationLimitError,
    FieldBoundError,
    InfiniteQuotientError,
    NotPrimePowerError,
    SidonLatticeError,
    SyndromeCollisionError,
)
from .geometry import (
    Shape,
    drop0,
    efficiency_ratio,
    lift0,
    metric_d,
    metric_da,
    shape_points,
    shape_size,
    unit_direction,
    vol_convex,
    vol_cubical,
)
from .sets import (
    BhSet,
    DifferenceSet,
    SearchReport,
    abelian_groups_of_order,
    bh_set,
    bose_chowla,
    difference_set,
    normalize_equivalence,
    search_min_group,
    search_planar,
    singer,
    verify_bh,
    verify_difference_set,
)
from .verify import (
    BoundReport,
    CoverReport,
    bound_f_h,
    bound_h_k,
    bound_phi_h,
    bound_phi_k,
    check_cover,
    check_packing,
    check_perfect,
    check_tiling,
    experiment_cyclicity,
    experiment_ppc,
    period_along,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
