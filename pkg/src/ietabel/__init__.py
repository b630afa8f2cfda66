"""Exact interval exchanges (with and without flips) over lattices in real number fields.

Ground arithmetic lives in :mod:`ietabel.ground`, lattices in :mod:`ietabel.lattice`,
the target groups of the invariants in :mod:`ietabel.alg2`, rectangle sets and
their measures in :mod:`ietabel.regions`, the IET group in :mod:`ietabel.iet` and
maps with flips in :mod:`ietabel.flips`.
"""

from .errors import IetabelError
from .flips import FlipMap
from .ground import Field, GroundNum, quadratic_field, rational_field
from .iet import IetMap, Order
from .lattice import IndependentSet, Lattice, lattice_from_generators

__all__ = [
    "Field", "GroundNum", "quadratic_field", "rational_field",
    "Lattice", "IndependentSet", "lattice_from_generators",
    "IetMap", "FlipMap", "Order", "IetabelError",
]
__version__ = "0.1.0"
