import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix, span_elements
from qmds.field import FieldError, FieldMismatchError, gf
from qmds.matrix import (
    Matrix,
    ShapeError,
    entrywise_galois,
    kernel,
    mul,
    rank,
    rowspace_contains,
    rowspace_equal,
    rref,
    transpose,
    vstack,
)


def brute_rank(m: Matrix) -> int:
    """log_q of the number of distinct vectors in the row span."""
    if m.rows == 0:
        return 0
    size = len(span_elements(m.spec, m.tolist(), m.cols))
    return round(math.log(size, m.spec.q))


def test_rref_examples():
    f5 = gf(5)
    eye = Matrix.identity(f5, 3)
    r, rk, piv = rref(eye)
    assert r == eye and rk == 3 and piv == [0, 1, 2]
    z = Matrix.zeros(f5, 2, 3)
    assert rref(z)[0] == z and rref(z)[1] == 0
    r, rk, piv = rref(Matrix.from_rows(f5, [[1, 2], [2, 4]]))
    assert r.tolist() == [[1, 2], [0, 0]] and rk == 1 and piv == [0]


def test_kernel_examples():
    f5 = gf(5)
    assert kernel(Matrix.identity(f5, 4)).rows == 0
    assert kernel(Matrix.from_rows(gf(2), [[1, 1]])).tolist() == [[1, 1]]
    assert kernel(Matrix.from_rows(f5, [[1, 2]])).tolist() == [[3, 1]]
    assert kernel(Matrix.zeros(f5, 0, 3)) == Matrix.identity(f5, 3)


def test_products_and_stacking(rng):
    f = gf(9)
    a = random_matrix(f, 3, 4, rng)
    b = random_matrix(f, 2, 4, rng)
    assert mul(a, Matrix.identity(f, 4)) == a
    assert a @ Matrix.identity(f, 4) == a
    assert transpose(transpose(a)) == a
    assert vstack(a, b).rows == 5
    with pytest.raises(ShapeError):
        mul(a, b)
    with pytest.raises(ShapeError):
        vstack(a, Matrix.zeros(f, 1, 3))
    with pytest.raises(FieldMismatchError):
        mul(Matrix.identity(gf(3), 2), Matrix.identity(gf(9), 2))


def test_matrix_product_against_reference(rng):
    f = gf(8)
    a = random_matrix(f, 3, 5, rng)
    b = random_matrix(f, 5, 2, rng)
    c = mul(a, b)
    for i in range(3):
        for j in range(2):
            acc = f.zero
            for t in range(5):
                acc = acc + a.entry(i, t) * b.entry(t, j)
            assert c.entry(i, j) == acc


def test_entrywise_galois_examples():
    f4 = gf(4)
    a = Matrix.from_rows(f4, [[0, 1, "x", "1+x"]])
    assert entrywise_galois(a, 0) == a
    assert entrywise_galois(a, 1).tolist() == [[0, 1, 3, 2]]
    f9 = gf(9)
    prime = Matrix.from_rows(f9, [[0, 1, 2], [2, 2, 1]])
    assert entrywise_galois(prime, 1) == prime
    with pytest.raises(FieldError):
        entrywise_galois(a, 2)


def test_rowspace_examples():
    f2 = gf(2)
    eye = Matrix.identity(f2, 2)
    assert rowspace_contains(eye, [1, 1])
    assert rowspace_contains(Matrix.from_rows(f2, [[1, 0]]), [0, 0])
    assert not rowspace_contains(Matrix.from_rows(f2, [[1, 0]]), [0, 1])
    f7 = gf(7)
    m = Matrix.from_rows(f7, [[1, 2, 3], [4, 5, 6]])
    assert rowspace_equal(m, rref(m)[0])
    with pytest.raises(ShapeError):
        rowspace_contains(m, [1, 2])


def test_json_roundtrip(rng):
    m = random_matrix(gf(16), 3, 5, rng)
    obj = json.loads(json.dumps(m.to_json()))
    assert obj["field"] == {"p": 2, "e": 4} and obj["rows"] == 3 and obj["cols"] == 5
    assert Matrix.from_json(obj) == m
    empty = Matrix.zeros(gf(3), 0, 4)
    assert Matrix.from_json(empty.to_json()) == empty


def test_entries_validated():
    with pytest.raises(FieldError):
        Matrix(gf(3), np.array([[3]]))
    m = Matrix.identity(gf(3), 2)
    with pytest.raises(ValueError):
        m.data[0, 0] = 2


@settings(max_examples=150, deadline=None)
@given(
    q=st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16]),
    rows=st.integers(0, 10),
    cols=st.integers(0, 10),
    seed=st.integers(0, 2**32 - 1),
)
def test_rank_kernel_properties(q, rows, cols, seed):
    f = gf(q)
    m = random_matrix(f, rows, cols, np.random.default_rng(seed))
    r, rk, piv = rref(m)
    assert rk == rank(transpose(m))
    assert rref(r)[0] == r
    ker = kernel(m)
    assert ker.rows == cols - rk
    assert mul(m, transpose(ker)).is_zero()
    # pivots carry leading ones and cleared columns
    for i, c in enumerate(piv):
        col = r.data[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5]), rows=st.integers(1, 4), cols=st.integers(1, 5), seed=st.integers(0, 2**32 - 1))
def test_rank_matches_span_count(q, rows, cols, seed):
    m = random_matrix(gf(q), rows, cols, np.random.default_rng(seed))
    assert rank(m) == brute_rank(m)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
def test_entrywise_galois_composition(q, rng):
    f = gf(q)
    a = random_matrix(f, 4, 6, rng)
    for s in range(1, f.e):
        assert entrywise_galois(entrywise_galois(a, s), f.e - s) == a
    for s, t in itertools.product(range(f.e), repeat=2):
        expected = Matrix(f, f.power(a.data, f.p ** ((f.e - s) + (f.e - t))))
        assert entrywise_galois(entrywise_galois(a, s), t) == expected
