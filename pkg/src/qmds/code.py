"""Linear codes over GF(q): Galois duals, hulls, containment and distance."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from qmds.field import FieldElement, FieldMismatchError, FieldSpec, field_make
from qmds.matrix import (
    Matrix,
    ShapeError,
    as_matrix,
    entrywise_galois,
    kernel,
    mul,
    rank,
    row_basis,
    rowspace_contains,
    transpose,
    vstack,
)

DEFAULT_DISTANCE_CAP = 2**24
_CHUNK = 2**15


class DistanceBudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the configured work budget."""


@dataclass(frozen=True)
class LinearCode:
    """An ``[n, k]_q`` code given by its canonical (RREF, full-rank) generator.

    Two codes are equal iff their canonical generators are equal.
    ``design_distance`` records a distance known from construction (e.g. a
    GRS code) and does not take part in equality.
    """

    generator: Matrix
    n: int
    design_distance: int | None = field(default=None, compare=False)
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.generator.cols != self.n:
            raise ShapeError(f"generator has {self.generator.cols} columns, expected n={self.n}")
        object.__setattr__(self, "generator", row_basis(self.generator))

    @classmethod
    def from_generator(cls, m: Matrix, **kwargs) -> LinearCode:
        return cls(m, m.cols, **kwargs)

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> LinearCode:
        return cls(Matrix.zeros(spec, 0, n), n)

    @classmethod
    def full(cls, spec: FieldSpec, n: int) -> LinearCode:
        return cls(Matrix.identity(spec, n), n, design_distance=1)

    @property
    def spec(self) -> FieldSpec:
        return self.generator.spec

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def q(self) -> int:
        return self.spec.q

    def parity_check(self) -> Matrix:
        return kernel(self.generator)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"LinearCode[{self.n},{self.k}]_{self.q}{tag}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "field": {"p": self.spec.p, "e": self.spec.e},
            "generator": self.generator.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> LinearCode:
        spec = field_make(int(obj["field"]["p"]), int(obj["field"].get("e", 1)))
        n = int(obj["n"])
        rows = obj.get("generator") or []
        g = Matrix.from_rows(spec, rows, cols=n) if rows else Matrix.zeros(spec, 0, n)
        code = cls.from_generator(g)
        if "k" in obj and int(obj["k"]) != code.k:
            raise ValueError(f"declared k={obj['k']} but generator has rank {code.k}")
        return code


def from_generator(m: Matrix) -> LinearCode:
    return LinearCode.from_generator(m)


def _check_pair(c1: LinearCode, c2: LinearCode) -> None:
    if c1.spec != c2.spec:
        raise FieldMismatchError(f"codes over {c1.spec!r} and {c2.spec!r}")
    if c1.n != c2.n:
        raise ShapeError(f"code lengths differ: {c1.n} != {c2.n}")


# ---------------------------------------------------------------------------
# forms and duals


def galois_form(x: Sequence, y: Sequence, s: int, spec: FieldSpec | None = None) -> FieldElement:
    """``sum_i x_i * y_i**(p**s)`` for two vectors of field elements."""
    if len(x) != len(y):
        raise ShapeError(f"vector lengths differ: {len(x)} != {len(y)}")
    if spec is None:
        first = next((v for v in list(x) + list(y) if isinstance(v, FieldElement)), None)
        if first is None:
            raise ValueError("pass spec when vectors hold plain indices")
        spec = first.spec
    spec._check_s(s)
    total = spec.zero
    for xi, yi in zip(x, y):
        total = total + spec.element(xi) * spec.element(yi).galois_pow(s)
    return total


def galois_dual(c: LinearCode, s: int = 0) -> LinearCode:
    """The s-Galois dual, i.e. the Euclidean dual of the code ``C^(p^(e-s))``."""
    return LinearCode(kernel(entrywise_galois(c.generator, s)), c.n)


def euclidean_dual(c: LinearCode) -> LinearCode:
    return galois_dual(c, 0)


def hermitian_dual(c: LinearCode) -> LinearCode:
    """Dual under ``sum x_i y_i^(sqrt q)``; needs an even extension degree."""
    spec = c.spec
    if spec.e % 2:
        raise ValueError(f"Hermitian dual needs even e, got {spec!r}")
    return galois_dual(c, spec.e // 2)


def frobenius_image(c: LinearCode, s: int) -> LinearCode:
    """The code ``C^(p^(e-s))`` obtained by raising every codeword entrywise."""
    return LinearCode.from_generator(entrywise_galois(c.generator, s))


# ---------------------------------------------------------------------------
# intersections and hulls


def contains(c1: LinearCode, c2: LinearCode) -> bool:
    """True iff ``c2`` is a subcode of ``c1``."""
    _check_pair(c1, c2)
    if c2.k == 0:
        return True
    return rowspace_contains(c1.generator, c2.generator)


def intersection(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Codewords common to both codes, via the stacked parity-check matrices."""
    _check_pair(c1, c2)
    return LinearCode(kernel(vstack(c1.parity_check(), c2.parity_check())), c1.n)


def hull(c: LinearCode) -> LinearCode:
    return intersection(c, euclidean_dual(c))


def hull_dim(c: LinearCode, verify: bool = False) -> int:
    """``k - rank(G G^T)``; with ``verify`` also recomputes it as an intersection."""
    g = c.generator
    dim = c.k - rank(mul(g, transpose(g)))
    if verify:
        other = hull(c).k
        if other != dim:
            raise AssertionError(f"hull dimension mismatch: rank formula {dim}, intersection {other}")
    return dim


# ---------------------------------------------------------------------------
# exhaustive enumeration


def codeword_chunks(g: Matrix, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Yield all ``q^k`` codewords ``m G`` in message order, in blocks of rows."""
    spec = g.spec
    q, k = spec.q, g.rows
    total = q**k
    for start in range(0, total, chunk):
        yield _codewords(g, start, min(start + chunk, total))


def _codewords(g: Matrix, start: int, stop: int) -> np.ndarray:
    spec = g.spec
    q = spec.q
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, g.cols), dtype=np.int64)
    for i in range(g.rows):
        digit = idx % q
        idx = idx // q
        out = spec.add(out, spec.mul(digit[:, None], g.data[i][None, :]))
    return out


def check_budget(q: int, k: int, cap: int) -> None:
    if q**k > cap:
        raise DistanceBudgetError(f"enumerating {q}^{k} codewords exceeds the budget {cap}")


def minimum_distance(c: LinearCode, cap: int = DEFAULT_DISTANCE_CAP, jobs: int = 1) -> int:
    """Exact minimum distance by enumerating every message.

    Raises :class:`DistanceBudgetError` if ``q**k > cap`` and ``ValueError``
    for the zero code, whose distance is undefined.
    """
    if c.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    check_budget(c.q, c.k, cap)
    total = c.q**c.k
    g = c.generator

    def block(start: int) -> int:
        words = _codewords(g, start, min(start + _CHUNK, total))
        w = np.count_nonzero(words, axis=1)
        if start == 0:
            w = w[1:]
        return int(w.min()) if w.size else c.n + 1

    starts = range(0, total, _CHUNK)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return min(pool.map(block, starts))
    return min(map(block, starts))


def is_mds(c: LinearCode, cap: int = DEFAULT_DISTANCE_CAP, jobs: int = 1) -> bool:
    """True iff ``d = n - k + 1``; the zero code counts as MDS by convention."""
    if c.k == 0:
        return True
    return minimum_distance(c, cap, jobs) == c.n - c.k + 1


def vector_in_code(c: LinearCode, v) -> bool:
    return rowspace_contains(c.generator, as_matrix(c.spec, v)) if c.k else not any(as_matrix(c.spec, v).data.ravel())
