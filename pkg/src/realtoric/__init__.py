"""Rational Betti numbers of real toric varieties of Weyl chambers.

The pipeline: root system -> Weyl group -> Coxeter complex -> characteristic
row-space orbits -> induced subcomplexes -> homology-preserving vertex
reduction -> modular-rank homology -> assembly into Betti numbers.
"""

from .rootsystem import (
    CartanData,
    InvalidSpecError,
    RootSystemSpec,
    cartan_data,
    cartan_matrix,
    enumerate_roots,
    parse_spec,
    reflection_matrix,
)
from .simplicial import SimplicialComplex
from .homology import BettiVector, reduced_betti
from .pipeline import BettiReport, betti_of_real_toric

__all__ = [
    "BettiReport",
    "BettiVector",
    "CartanData",
    "InvalidSpecError",
    "RootSystemSpec",
    "SimplicialComplex",
    "betti_of_real_toric",
    "cartan_data",
    "cartan_matrix",
    "enumerate_roots",
    "parse_spec",
    "reduced_betti",
    "reflection_matrix",
]

__version__ = "0.1.0"
