"""Generalized Reed-Solomon codes and their dual multipliers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qmds.code import LinearCode
from qmds.field import FieldElement, FieldSpec
from qmds.matrix import Matrix


class GrsError(ValueError):
    """Invalid GRS parameters."""


@dataclass(frozen=True)
class GrsSpec:
    """Parameters of ``GRS_k(a, v)``, optionally extended by the point at infinity.

    ``a`` and ``v`` hold field indices.  The extended code has length
    ``len(a) + 1``; its last coordinate carries the coefficient of
    ``x^(k-1)`` with multiplier 1.
    """

    field: FieldSpec
    a: tuple[int, ...]
    v: tuple[int, ...]
    k: int
    extended: bool = False

    def __post_init__(self) -> None:
        a = tuple(_idx(self.field, x) for x in self.a)
        v = tuple(_idx(self.field, x) for x in self.v)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        n, q = len(a), self.field.q
        if n < 1 or n > q:
            raise GrsError(f"need 1 <= len(a) <= q = {q}, got {n}")
        if len(set(a)) != n:
            raise GrsError("evaluation points must be distinct")
        if len(v) != n:
            raise GrsError(f"{len(v)} multipliers for {n} points")
        if 0 in v:
            raise GrsError("multipliers must be nonzero")
        if not 1 <= self.k <= n:
            raise GrsError(f"dimension k={self.k} outside [1, {n}]")

    @property
    def length(self) -> int:
        return len(self.a) + int(self.extended)

    @classmethod
    def default(
        cls,
        field: FieldSpec,
        n: int,
        k: int,
        v: Sequence | None = None,
        a: Sequence | None = None,
        extended: bool = False,
    ) -> GrsSpec:
        """Points default to the first ``n`` field elements, multipliers to 1."""
        if a is None:
            if n > field.q:
                raise GrsError(f"n={n} exceeds q={field.q}")
            a = range(n)
        if v is None:
            v = (1,) * len(a)
        return cls(field, tuple(a), tuple(v), k, extended)


def _idx(spec: FieldSpec, x: int | str | FieldElement) -> int:
    return spec.element(x).index


def vandermonde_rows(spec: FieldSpec, a: Sequence[int], k: int) -> np.ndarray:
    """``k x n`` array with entry ``(i, j) = a_j ** i`` (``0**0 = 1``)."""
    pts = np.asarray(a, dtype=np.int64)
    rows = [np.ones_like(pts)]
    for _ in range(1, k):
        rows.append(spec.mul(rows[-1], pts))
    return np.array(rows[:k], dtype=np.int64).reshape(k, len(pts))


def grs_generator(g: GrsSpec) -> Matrix:
    """Row ``i`` is ``(v_1 a_1^i, ..., v_n a_n^i)`` for ``i = 0..k-1``."""
    spec = g.field
    rows = spec.mul(vandermonde_rows(spec, g.a, g.k), np.asarray(g.v)[None, :])
    if g.extended:
        inf = np.zeros((g.k, 1), dtype=np.int64)
        inf[g.k - 1, 0] = 1
        rows = np.hstack([rows, inf])
    return Matrix(spec, rows)


def grs_code(g: GrsSpec) -> LinearCode:
    n = g.length
    tag = f"{'e' if g.extended else ''}GRS_{g.k}"
    return LinearCode(grs_generator(g), n, design_distance=n - g.k + 1, label=tag)


def dual_multipliers(spec: FieldSpec, a: Sequence) -> tuple[int, ...]:
    """``u_i = prod_{j != i} (a_i - a_j)^(-1)`` as field indices."""
    pts = [_idx(spec, x) for x in a]
    if len(pts) < 2:
        raise GrsError("need at least two evaluation points")
    if len(set(pts)) != len(pts):
        raise GrsError("evaluation points must be distinct")
    els = [spec.element(x) for x in pts]
    u = []
    for i, ai in enumerate(els):
        prod = spec.one
        for j, aj in enumerate(els):
            if j != i:
                prod = prod * (ai - aj)
        u.append(prod.inv().index)
    return tuple(u)


def grs_dual_spec(g: GrsSpec) -> GrsSpec:
    """``GRS_{n-k}(a, u * v^(-1))``, the Euclidean dual of a non-extended GRS code."""
    if g.extended:
        raise GrsError("dual spec only implemented for non-extended codes")
    if g.k == len(g.a):
        raise GrsError("the full space has a zero-dimensional dual")
    spec = g.field
    u = np.asarray(dual_multipliers(spec, g.a))
    w = spec.mul(u, spec.inv(np.asarray(g.v)))
    return GrsSpec(spec, g.a, tuple(int(x) for x in w), len(g.a) - g.k)
