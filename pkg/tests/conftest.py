import itertools

import numpy as np
import pytest

from qmds.code import LinearCode
from qmds.field import FieldSpec, gf
from qmds.matrix import Matrix

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_matrix(spec: FieldSpec, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    return Matrix(spec, rng.integers(0, spec.q, size=(rows, cols)))


def random_code(spec: FieldSpec, n: int, k: int, rng: np.random.Generator) -> LinearCode:
    """A code of dimension at most k (random generator, rank may drop)."""
    return LinearCode.from_generator(random_matrix(spec, k, n, rng))


def all_vectors(spec: FieldSpec, n: int):
    return itertools.product(spec.elements(), repeat=n)


def span_elements(spec: FieldSpec, rows: list[list[int]], n: int) -> set[tuple[int, ...]]:
    """Every linear combination of ``rows`` using reference element arithmetic."""
    els = spec.elements()
    vecs = [[spec.element(x) for x in r] for r in rows]
    out = set()
    for coeffs in itertools.product(els, repeat=len(vecs)):
        acc = [spec.zero] * n
        for c, v in zip(coeffs, vecs):
            acc = [a + c * x for a, x in zip(acc, v)]
        out.add(tuple(a.index for a in acc))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[2, 3, 4, 5, 7, 8, 9])
def small_field(request):
    return gf(request.param)


def contained_pair(spec: FieldSpec, n: int, k1: int, dk: int, s: int, rng: np.random.Generator):
    """Random (C1, C2) with C2^perp_s = D for a random subcode D of C1.

    C2 is the p^s-power image of D^perp, so its s-Galois dual is exactly D.
    """
    from qmds.matrix import entrywise_galois, kernel

    c1 = random_code(spec, n, k1, rng)
    if c1.k == 0:
        d = c1.generator
    else:
        mix = random_matrix(spec, min(dk, c1.k), c1.k, rng)
        d = mix @ c1.generator
    g2 = entrywise_galois(kernel(d), (spec.e - s) % spec.e)
    return c1, LinearCode(g2, n)
