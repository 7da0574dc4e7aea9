"""Walled Brauer algebras, unitary integration and Yang-Mills measures on surfaces."""

__version__ = "0.1.0"

from .algebra_core import ExactScalar, Partition
from .weights import HighestWeight, from_pair, weyl_dimension
from .witten_zeta import ZetaQuery, zeta
from .walled_brauer import BrauerElement, WalledDiagram, traceless_projector
from .surface_words import SurfaceWord, dehn_shorten
from .maps_irf import wilson_expectation

__all__ = [
    "__version__",
    "ExactScalar",
    "Partition",
    "HighestWeight",
    "from_pair",
    "weyl_dimension",
    "ZetaQuery",
    "zeta",
    "BrauerElement",
    "WalledDiagram",
    "traceless_projector",
    "SurfaceWord",
    "dehn_shorten",
    "wilson_expectation",
]
