"""Quantum MDS codes from generalized Reed-Solomon codes over GF(p^e)."""

from qmds.field import FieldElement, FieldSpec, field_make, gf
from qmds.matrix import Matrix
from qmds.code import LinearCode

__version__ = "0.1.0"

__all__ = ["FieldElement", "FieldSpec", "LinearCode", "Matrix", "field_make", "gf"]
