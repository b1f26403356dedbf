"""Exact Fano / weak Fano classification of generalized Bott manifolds."""

from .lattice import IntVec, LatticeError, det, kernel_primitive, mu, nu
from .tower import (
    BottMatrix,
    BVectors,
    Classification,
    GeneralizedBottTower,
    TowerError,
    Verdict,
    bott_fano,
    chary_condition,
    classify,
    classify_picard_two,
    compute_b,
    from_bott_matrix,
    validate,
)
from .fan import (
    Fan,
    FanError,
    PrimitiveCollectionData,
    WallData,
    batyrev_classify,
    build_fan,
    collection_for_stage,
    expected_primitive_relation,
    primitive_collections_bruteforce,
    primitive_relation,
    signed_relation,
    validate_smooth_complete,
    wall_relation,
)
from .enumeration import (
    FANO_THREE_STAGE_TRIPLES,
    CharyCompareReport,
    SweepError,
    SweepReport,
    SweepSpec,
    chary_compare,
    sweep,
)

__version__ = "0.1.0"
