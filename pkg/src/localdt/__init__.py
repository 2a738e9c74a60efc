"""Exact-rational wallcrossing engine for rank-two ADHM/Donaldson-Thomas
invariants of local curves.

The library computes charge-indexed counting invariants through two
independent wallcrossing algorithms -- weighted sums over Harder-Narasimhan
configurations and the Kontsevich-Soibelman ordered-product factorization in
a truncated nilpotent Lie algebra -- and cross-checks them against closed-form
genus-0 generating functions.  All coefficients are `fractions.Fraction`;
there is no floating point.
"""

from .charge import (
    Charge,
    Geometry,
    StabilityParam,
    charge,
    delta_slope,
    dual_charge,
    euler_pairing,
    local_curve,
    weight_f,
    weight_g,
)
from .hnconfig import (
    HNSequence,
    WallSet,
    enumerate_admissible,
    enumerate_hn_minus,
    enumerate_walls,
    validate_sequence,
)
from .liealg import LieElement, TruncationBounds, ad_power_series, bracket, gen
from .localcurve import (
    Genus0Report,
    LocalCurveConfig,
    build_lhs,
    closed_form_a1,
    closed_form_series,
    conjugated_seed,
    extract_asymptotic,
    higgs_invariant,
    verify_genus0,
)
from .pseries import BiSeries, ps_exp, ps_log, ps_product_formula
from .uealg import (
    UEAElement,
    exp_u,
    lie_coefficients,
    log_u,
    ordered_ray_product,
    star,
)
from .wallcross import (
    InvariantTable,
    jump_v1,
    jump_v2_js,
    jump_v2_ks,
    minus_table,
    multicover,
    multicover_invert,
    verify_ks_group_identity,
)

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "Charge",
    "Genus0Report",
    "Geometry",
    "HNSequence",
    "InvariantTable",
    "LieElement",
    "LocalCurveConfig",
    "StabilityParam",
    "TruncationBounds",
    "UEAElement",
    "WallSet",
    "ad_power_series",
    "bracket",
    "build_lhs",
    "charge",
    "closed_form_a1",
    "closed_form_series",
    "conjugated_seed",
    "delta_slope",
    "dual_charge",
    "enumerate_admissible",
    "enumerate_hn_minus",
    "enumerate_walls",
    "euler_pairing",
    "exp_u",
    "extract_asymptotic",
    "gen",
    "higgs_invariant",
    "jump_v1",
    "jump_v2_js",
    "jump_v2_ks",
    "lie_coefficients",
    "local_curve",
    "log_u",
    "minus_table",
    "multicover",
    "multicover_invert",
    "ordered_ray_product",
    "ps_exp",
    "ps_log",
    "ps_product_formula",
    "star",
    "validate_sequence",
    "verify_genus0",
    "verify_ks_group_identity",
    "weight_f",
    "weight_g",
]
