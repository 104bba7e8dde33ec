"""CSS quantum codes from pairs of classical codes under an s-Galois dual.

A pair ``(C1, C2)`` with ``C2^{perp_s}`` contained in ``C1`` gives an
``[[n, k1 + k2 - n, d]]_q`` quantum code.  Quantum codes are represented
here only by their parameters and the classical witness pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from qmds.code import (
    DEFAULT_DISTANCE_CAP,
    DistanceBudgetError,
    LinearCode,
    _check_pair,
    check_budget,
    codeword_chunks,
    contains,
    galois_dual,
    intersection,
    minimum_distance,
)
from qmds.field import FieldSpec
from qmds.matrix import Matrix, entrywise_galois, mul, rank, transpose, vstack

DistanceKind = Literal["exact", "lower_bound"]


class SingletonViolation(AssertionError):
    """Parameters break ``2d <= n - k + 2``; this always indicates a bug."""


class CriterionError(ValueError):
    """The pair is not dual-containing, so the CSS construction does not apply."""


def singleton_slack(n: int, k: int, d: int) -> int:
    return n - k + 2 - 2 * d


@dataclass(frozen=True)
class QuantumCodeParams:
    """``[[n, k, d]]_q`` with a record of how ``d`` is known.

    ``provenance`` is one of ``"design"`` (theorem formula), ``"enumerated"``
    (exhaustive search), ``"classical_min"`` (``min(d1, d2)`` bound) or
    ``"singleton_squeeze"`` (bound meets the quantum Singleton bound).
    ``degenerate`` marks ``k = 0`` codes whose distance uses the
    minimum-weight-of-C1 convention.
    """

    n: int
    k: int
    d: int
    q: int
    d_kind: DistanceKind = "exact"
    provenance: str = "design"
    degenerate: bool = False
    s: int | None = None
    witnesses: tuple[LinearCode, LinearCode] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"quantum dimension {self.k} outside [0, {self.n}]")
        if self.d < 1:
            raise ValueError(f"distance must be >= 1, got {self.d}")
        if self.d_kind not in ("exact", "lower_bound"):
            raise ValueError(f"unknown distance kind {self.d_kind!r}")
        if singleton_slack(self.n, self.k, self.d) < 0:
            raise SingletonViolation(f"[[{self.n},{self.k},{self.d}]]_{self.q} violates 2d <= n - k + 2")

    @property
    def label(self) -> str:
        ge = ">=" if self.d_kind == "lower_bound" else ""
        return f"[[{self.n},{self.k},{ge}{self.d}]]_{self.q}"

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.n, self.k, self.d

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "d_kind": self.d_kind,
            "provenance": self.provenance,
            "degenerate": self.degenerate,
            "label": self.label,
        }
        if self.s is not None:
            out["s"] = self.s
        if self.witnesses is not None:
            out["witnesses"] = [c.to_json() for c in self.witnesses]
        return out


@dataclass(frozen=True)
class SingletonCheck:
    slack: int
    is_quantum_mds: bool


def singleton_check(params: QuantumCodeParams) -> SingletonCheck:
    slack = singleton_slack(params.n, params.k, params.d)
    if slack < 0:
        raise SingletonViolation(f"{params.label} violates 2d <= n - k + 2")
    return SingletonCheck(slack, slack == 0)


def squeeze(params: QuantumCodeParams) -> QuantumCodeParams:
    """Upgrade a lower bound that already meets the Singleton bound to an exact value."""
    if params.d_kind == "lower_bound" and singleton_slack(params.n, params.k, params.d) == 0:
        return QuantumCodeParams(
            params.n, params.k, params.d, params.q, "exact", "singleton_squeeze",
            params.degenerate, params.s, params.witnesses,
        )
    return params


# ---------------------------------------------------------------------------
# dual-containing criteria


@dataclass(frozen=True)
class ProductCriterion:
    rk: int
    dim_intersection: int
    holds: bool


@dataclass(frozen=True)
class StackCriterion:
    rk: int
    holds: bool


def rank_product_criterion(c1: LinearCode, c2: LinearCode, s: int = 0) -> ProductCriterion:
    """``rk = rank(G1 (G2^(p^(e-s)))^T)``; holds iff ``rk <= k1 + k2 - n`` and ``k1 + k2 >= n``."""
    _check_pair(c1, c2)
    g2 = entrywise_galois(c2.generator, s)
    rk = rank(mul(c1.generator, transpose(g2)))
    slack = c1.k + c2.k - c1.n
    return ProductCriterion(rk, c1.k - rk, slack >= 0 and rk <= slack)


def rank_stack_criterion(c1: LinearCode, c2: LinearCode, s: int = 0) -> StackCriterion:
    """``rk = rank([G1; H2^(p^(e-s))])``; holds iff ``rk <= k1`` and ``k1 + k2 >= n``."""
    _check_pair(c1, c2)
    h2 = entrywise_galois(c2.parity_check(), s)
    rk = rank(vstack(c1.generator, h2))
    return StackCriterion(rk, c1.k + c2.k >= c1.n and rk <= c1.k)


def dual_containing(c1: LinearCode, c2: LinearCode, s: int = 0) -> bool:
    """Direct test of ``C2^{perp_s} <= C1``."""
    return contains(c1, galois_dual(c2, s))


@dataclass(frozen=True)
class CriterionTranscript:
    product: ProductCriterion
    stack: StackCriterion
    direct: bool
    intersection_dim: int

    @property
    def agree(self) -> bool:
        return (
            self.product.holds == self.stack.holds == self.direct
            and self.product.dim_intersection == self.intersection_dim
        )

    def to_json(self) -> dict:
        return {
            "product_rank": self.product.rk,
            "product_holds": self.product.holds,
            "stack_rank": self.stack.rk,
            "stack_holds": self.stack.holds,
            "direct_containment": self.direct,
            "dim_intersection": self.intersection_dim,
            "agree": self.agree,
        }


def verify_criteria(c1: LinearCode, c2: LinearCode, s: int = 0) -> CriterionTranscript:
    """Run all three containment checks plus the intersection-dimension identity."""
    return CriterionTranscript(
        rank_product_criterion(c1, c2, s),
        rank_stack_criterion(c1, c2, s),
        dual_containing(c1, c2, s),
        intersection(c1, galois_dual(c2, s)).k,
    )


# ---------------------------------------------------------------------------
# parameters and distances


def _classical_distance(c: LinearCode, source: str, cap: int, jobs: int) -> int | None:
    if c.k == 0:
        return None
    if source != "design" and c.q**c.k <= cap:
        return minimum_distance(c, cap, jobs)
    if source != "enumerate" and c.design_distance is not None:
        return c.design_distance
    raise DistanceBudgetError(f"no certified distance for {c!r} within budget {cap}")


def css_params(
    c1: LinearCode,
    c2: LinearCode,
    s: int = 0,
    cap: int = DEFAULT_DISTANCE_CAP,
    jobs: int = 1,
    distance_source: Literal["auto", "design", "enumerate"] = "auto",
) -> QuantumCodeParams:
    """``[[n, k1 + k2 - n, >= min(d1, d2)]]_q`` for a dual-containing pair.

    Classical distances are enumerated when ``q**k <= cap`` and otherwise
    taken from the codes' design distances (``distance_source`` can force
    either route).
    """
    crit = rank_stack_criterion(c1, c2, s)
    if not crit.holds:
        raise CriterionError(
            f"C2^perp_{s} is not contained in C1 (stack rank {crit.rk} > k1={c1.k} or k1+k2 < n)"
        )
    ds = [d for d in (_classical_distance(c, distance_source, cap, jobs) for c in (c1, c2)) if d is not None]
    kq = c1.k + c2.k - c1.n
    return QuantumCodeParams(
        c1.n, kq, min(ds), c1.q, "lower_bound", "classical_min", kq == 0, s, (c1, c2)
    )


@dataclass(frozen=True)
class DistanceReport:
    d: int
    degenerate: bool
    from_c1: int | None
    from_c2: int | None


def _syndrome_zero(spec: FieldSpec, words: np.ndarray, checks: Matrix) -> np.ndarray:
    """Rows of ``words`` orthogonal (Euclidean) to every row of ``checks``."""
    if checks.rows == 0:
        return np.ones(words.shape[0], dtype=bool)
    syn = np.zeros((words.shape[0], checks.rows), dtype=np.int64)
    for j in range(words.shape[1]):
        syn = spec.add(syn, spec.mul(words[:, j : j + 1], checks.data[:, j][None, :]))
    return ~syn.any(axis=1)


def _min_weight_outside(c: LinearCode, checks: Matrix) -> int | None:
    best = None
    for words in codeword_chunks(c.generator):
        inside = _syndrome_zero(c.spec, words, checks)
        w = np.count_nonzero(words[~inside], axis=1)
        if w.size:
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


def css_distance_details(
    c1: LinearCode, c2: LinearCode, s: int = 0, cap: int = DEFAULT_DISTANCE_CAP, jobs: int = 1
) -> DistanceReport:
    """Exact quantum distance of the CSS pair by enumeration.

    ``d`` is the minimum weight over ``C1 minus (C2')^perp`` together with
    ``C2' minus C1^perp``, where ``C2' = C2^(p^(e-s))``.  Membership in a
    Euclidean dual is tested by a zero syndrome against the generator of the
    code being dualised.  When both sets are empty (``k = 0``) the minimum
    weight of ``C1`` is reported and ``degenerate`` is set.
    """
    if not rank_stack_criterion(c1, c2, s).holds:
        raise CriterionError(f"C2^perp_{s} is not contained in C1")
    check_budget(c1.q, max(c1.k, c2.k), cap)
    g2p = entrywise_galois(c2.generator, s)
    c2p = LinearCode(g2p, c2.n)
    d1 = _min_weight_outside(c1, g2p)
    d2 = _min_weight_outside(c2p, c1.generator)
    found = [d for d in (d1, d2) if d is not None]
    if found:
        return DistanceReport(min(found), False, d1, d2)
    base = c1 if c1.k else c2
    return DistanceReport(minimum_distance(base, cap, jobs), True, None, None)


def css_distance_exact(
    c1: LinearCode, c2: LinearCode, s: int = 0, cap: int = DEFAULT_DISTANCE_CAP, jobs: int = 1
) -> int:
    return css_distance_details(c1, c2, s, cap, jobs).d


def exact_params(
    c1: LinearCode, c2: LinearCode, s: int = 0, cap: int = DEFAULT_DISTANCE_CAP, jobs: int = 1
) -> QuantumCodeParams:
    rep = css_distance_details(c1, c2, s, cap, jobs)
    return QuantumCodeParams(
        c1.n, c1.k + c2.k - c1.n, rep.d, c1.q, "exact", "enumerated", rep.degenerate, s, (c1, c2)
    )
