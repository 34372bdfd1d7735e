"""Exact level-k Verlinde rings, their Real refinements and KR coefficient arithmetic."""

from .errors import (
    EvennessViolation,
    InputError,
    NumericConsistencyError,
    ResourceError,
    UnsupportedError,
    ValidationError,
    VerlindeError,
)
from .fusion_ring import (
    FusionTable,
    fusion_coeffs,
    fusion_table,
    fusion_via_smatrix,
    in_verlinde_ideal,
    level_weights,
    s_matrix,
    special_points,
    tensor_decompose,
)
from .kr_algebra import KPlusCoefficient, KRCoefficient, SpincClassification, coeff_c, coeff_r, spin_c_classify
from .real_structure import RealInvolutionDatum, apply_sigma_plus, classify, epsilon, preset, validate
from .real_verlinde import (
    RealVerlindeRing,
    RKRElement,
    builtin_ik_generators,
    enumerate_S,
    real_basis,
    real_ideal_generators,
    rr_k_rank,
    verify_module_structure,
)
from .root_system import CartanType, RootDatum, build_root_datum

__version__ = "0.1.0"
