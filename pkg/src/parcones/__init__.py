"""Exact nef and pseudoeffective cones of projectivized parabolic bundles on curves."""
from .cones import (
    BundleData,
    Cone2D,
    NuTable,
    cone_equal,
    dual_cone,
    eff_cone_lower,
    eff_cone_upper,
    is_k_homogeneous,
    is_semistable,
    membership,
    nef_cone_1,
    nef_cone_upper,
    nu_table,
)
from .errors import (
    ConsistencyError,
    InadmissibleGammaError,
    UnderdeterminedBundleError,
    ValidationError,
)
from .parabolic import (
    HNData,
    ParabolicBundleSpec,
    ParabolicLine,
    ParabolicPoint,
    hn_from_split,
    level,
    parabolic_degree,
    parabolic_slope,
    resolve_hn,
)
from .ring import CoverContext, NumericalClass, RingContext, cyclify, degree_of_top, multiply, pair

__version__ = "0.1.0"
