"""Exact computations on filtered geometric lattices, Bergman fans and
tropical (p,q)-homology of matroids."""

from .errors import FlatLatticeError, InputError
from .matroid import Matroid, boolean, dual, fano, from_bases, from_flats, graphic, mobius, uniform
from .subsets import Weight

__all__ = [
    "FlatLatticeError", "InputError", "Matroid", "Weight",
    "boolean", "dual", "fano", "from_bases", "from_flats", "graphic", "mobius", "uniform",
]
__version__ = "0.1.0"
