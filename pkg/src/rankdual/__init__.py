"""Computational checks of rank-level duality between so(2r+1) at level 2s+1
and so(2s+1) at level 2r+1.

Modules: weights, characters, verlinde, branching, fock, cli.
"""

from .errors import DomainError, PrecisionError, RankDualError, ResourceError, SmallRankWarning
from .numeric import DEFAULT, NumericConfig
from .weights import BWeight, ULabel, YoungDiagram, sigma, transpose, young_to_weight

__version__ = "0.1.0"

__all__ = [
    "BWeight",
    "DEFAULT",
    "DomainError",
    "NumericConfig",
    "PrecisionError",
    "RankDualError",
    "ResourceError",
    "SmallRankWarning",
    "ULabel",
    "YoungDiagram",
    "sigma",
    "transpose",
    "young_to_weight",
]
