"""Dense matrices over GF(q) with exact Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from qmds.field import FieldElement, FieldError, FieldMismatchError, FieldSpec


class ShapeError(ValueError):
    """Operand shapes are not conformable."""


@dataclass(frozen=True, eq=False)
class Matrix:
    """A ``rows x cols`` matrix whose entries are field indices.

    The underlying array is read-only; all operations return new matrices.
    """

    spec: FieldSpec
    data: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.array(self.data, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError(f"matrix data must be 2-D, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= self.spec.q):
            raise FieldError(f"entries out of range for {self.spec!r}")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    # --- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        """Build from nested sequences of indices, strings or field elements."""
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(spec, 0, cols or 0)
        if cols is not None and any(len(r) != cols for r in rows):
            raise ShapeError("row lengths differ from cols")
        data = [[_to_index(spec, v) for v in r] for r in rows]
        if len({len(r) for r in data}) > 1:
            raise ShapeError("ragged rows")
        return cls(spec, np.array(data, dtype=np.int64).reshape(len(data), -1))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> Matrix:
        return cls(spec, np.eye(n, dtype=np.int64))

    # --- basic accessors -----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def entry(self, i: int, j: int) -> FieldElement:
        return self.spec.element(int(self.data[i, j]))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.spec == other.spec and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.spec, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.spec!r}, {self.tolist()})"

    def __matmul__(self, other: Matrix) -> Matrix:
        return mul(self, other)

    @property
    def T(self) -> Matrix:
        return transpose(self)

    def is_zero(self) -> bool:
        return not self.data.any()

    # --- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": {"p": self.spec.p, "e": self.spec.e},
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Matrix:
        from qmds.field import field_make

        spec = field_make(int(obj["field"]["p"]), int(obj["field"].get("e", 1)))
        rows, cols = int(obj["rows"]), int(obj["cols"])
        m = cls.from_rows(spec, obj["entries"], cols=cols) if rows else cls.zeros(spec, 0, cols)
        if m.rows != rows:
            raise ShapeError(f"declared {rows} rows but found {m.rows}")
        return m


def _to_index(spec: FieldSpec, v) -> int:
    if isinstance(v, FieldElement):
        if v.spec != spec:
            raise FieldMismatchError(f"element of {v.spec!r} in a matrix over {spec!r}")
        return v.index
    return spec.element(v).index


def _same_spec(*ms: Matrix) -> FieldSpec:
    spec = ms[0].spec
    for m in ms[1:]:
        if m.spec != spec:
            raise FieldMismatchError(f"cannot combine matrices over {spec!r} and {m.spec!r}")
    return spec


def as_matrix(spec: FieldSpec, v) -> Matrix:
    """Coerce a vector (1-D sequence) or a Matrix into a Matrix."""
    if isinstance(v, Matrix):
        if v.spec != spec:
            raise FieldMismatchError(f"cannot combine matrices over {spec!r} and {v.spec!r}")
        return v
    return Matrix.from_rows(spec, [list(v)])


# ---------------------------------------------------------------------------
# elimination


def _rref_array(spec: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = spec.mul(a[r], spec.inv(a[r, c]))
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = a[others, c][:, None]
            a[others] = spec.sub(a[others], spec.mul(factors, a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Canonical reduced row-echelon form, rank and pivot columns.

    The returned matrix keeps the input shape (zero rows at the bottom).
    """
    a, pivots = _rref_array(m.spec, m.data)
    return Matrix(m.spec, a), len(pivots), pivots


def rank(m: Matrix) -> int:
    return len(_rref_array(m.spec, m.data)[1])


def row_basis(m: Matrix) -> Matrix:
    """RREF with the zero rows dropped."""
    a, pivots = _rref_array(m.spec, m.data)
    return Matrix(m.spec, a[: len(pivots)])


def kernel(m: Matrix) -> Matrix:
    """Basis of ``{x : M x^T = 0}``, one row per free column of ``rref(M)``.

    Each basis vector has its free variable set to 1 and the other free
    variables set to 0.
    """
    spec = m.spec
    a, pivots = _rref_array(spec, m.data)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(pivots):
            out[t, pc] = spec.neg(a[i, f])
    return Matrix(spec, out)


# ---------------------------------------------------------------------------
# products and reshaping


def mul(a: Matrix, b: Matrix) -> Matrix:
    spec = _same_spec(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    for t in range(a.cols):
        out = spec.add(out, spec.mul(a.data[:, t : t + 1], b.data[t : t + 1, :]))
    return Matrix(spec, out)


def transpose(a: Matrix) -> Matrix:
    return Matrix(a.spec, a.data.T)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    spec = _same_spec(a, b)
    if a.cols != b.cols:
        raise ShapeError(f"cannot stack {a.shape} over {b.shape}")
    return Matrix(spec, np.vstack([a.data, b.data]))


def entrywise_galois(a: Matrix, s: int) -> Matrix:
    """Raise every entry to the power ``p**(e-s)``.

    For ``s = 0`` this is the identity, since ``x**q = x`` in GF(q).
    """
    spec = a.spec
    spec._check_s(s)
    if s == 0:
        return a
    return Matrix(spec, spec.frobenius(a.data, spec.e - s))


# ---------------------------------------------------------------------------
# subspace tests


def rowspace_contains(a: Matrix, v) -> bool:
    """True iff every row of ``v`` lies in the row space of ``a``."""
    vm = as_matrix(a.spec, v)
    _same_spec(a, vm)
    if vm.cols != a.cols:
        raise ShapeError(f"vector length {vm.cols} != {a.cols}")
    return rank(vstack(a, vm)) == rank(a)


def rowspace_equal(a: Matrix, b: Matrix) -> bool:
    return rowspace_contains(a, b) and rowspace_contains(b, a)


def matrix_from_vectors(spec: FieldSpec, vectors: Iterable[Sequence[int]], cols: int) -> Matrix:
    vs = [list(v) for v in vectors]
    return Matrix.from_rows(spec, vs) if vs else Matrix.zeros(spec, 0, cols)


__all__ = [
    "Matrix",
    "ShapeError",
    "as_matrix",
    "entrywise_galois",
    "kernel",
    "matrix_from_vectors",
    "mul",
    "rank",
    "row_basis",
    "rowspace_contains",
    "rowspace_equal",
    "rref",
    "transpose",
    "vstack",
]
