"""Lipschitz-free space norms on finite pointed metric spaces: transport
certificates, long-trapezoid moduli, octahedrality and differentiability."""

from .metric import (
    EXACT,
    FLOAT,
    PointedMetricSpace,
    diameter,
    l1_sum,
    min_separation,
    restrict,
    scale_space,
    validate_metric,
)
from .transport import Measure, canonicalize, kr_norm, lip_constant, ltp_extend, mcshane_extend, molecule
from .ltp import all_pairs_profile, ltp_modulus, ltp_ratio, pair_ratio, ramsey_extract
from .octa import ConvexMoleculeCombination, chain_check, frechet_check, gateaux_witnesses, oct_index

__all__ = [
    "EXACT",
    "FLOAT",
    "PointedMetricSpace",
    "diameter",
    "l1_sum",
    "min_separation",
    "restrict",
    "scale_space",
    "validate_metric",
    "Measure",
    "canonicalize",
    "kr_norm",
    "lip_constant",
    "ltp_extend",
    "mcshane_extend",
    "molecule",
    "all_pairs_profile",
    "ltp_modulus",
    "ltp_ratio",
    "pair_ratio",
    "ramsey_extract",
    "ConvexMoleculeCombination",
    "chain_check",
    "frechet_check",
    "gateaux_witnesses",
    "oct_index",
]

__version__ = "0.1.0"
