"""Rational maps between toric pairs, strict transforms, volume forms and local probes."""
from .maps import (
    CYPair,
    MapError,
    RationalMapSpec,
    clear_denominators,
    default_chart,
    grading_matrix,
    map_compose,
    map_equal,
    normalize_map,
    pair_diagnostics,
)
from .pell import (
    COMPONENT_1,
    COMPONENT_2,
    NOT_A_MEMBER,
    gq_membership,
    gq_rank_condition,
    pell_identity,
    pell_matrix,
    pell_selfmap,
    pell_solution,
)
from .singular import (
    AkType,
    SingularityError,
    classify_Ak,
    probe_cA,
    reid_tai,
    reid_tai_bruteforce,
    tangent_cone,
)
from .transform import (
    RestrictionReport,
    TransformError,
    fixes_divisor_pointwise,
    pullback,
    restricts_birationally,
    saturation_roundtrip,
    strict_transform,
)
from .volume import VolumeError, VPReport, pointwise_ratio, volume_preserving, volume_ratio
