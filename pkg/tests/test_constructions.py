import itertools
import math

import numpy as np
import pytest

from qmds.code import hull, hull_dim, minimum_distance
from qmds.constructions import (
    ConstructionError,
    HullWitness,
    compare_table_one,
    construction_one_params,
    construction_one_range,
    construction_two,
    construction_two_codes,
    distance_range,
    hull_search,
    hull_to_quantum,
    open_problem_instance,
    table_one,
    table_two_ranges,
)
from qmds.css import CriterionError, css_distance_details, singleton_check
from qmds.field import gf
from qmds.grs import GrsSpec, grs_code


def extended_hull_dims(q: int, k: int) -> set[int]:
    """Hull dimensions of every extended GRS code on all of GF(q) plus infinity.

    The Gram matrix only sees squares of the multipliers, and a global
    rescaling fixes the infinity multiplier, so one representative per
    square value is exhaustive.
    """
    f = gf(q)
    reps = {}
    for x in range(1, q):
        reps.setdefault(int(f.mul(x, x)), x)
    dims = set()
    for v in itertools.product(sorted(reps.values()), repeat=q):
        dims.add(hull_dim(grs_code(GrsSpec(f, tuple(range(q)), v, k, True))))
    return dims


# -- length q + 1 family --------------------------------------------------


def test_construction_one_range():
    assert list(construction_one_range(9)) == [5, 6, 7, 8, 9, 10]
    assert list(construction_one_range(16)) == list(range(9, 18))
    assert list(construction_one_range(4)) == [3, 4, 5]
    for bad in (2, 3, 6):
        with pytest.raises(ValueError):
            construction_one_range(bad)


def test_construction_one_params_examples():
    assert construction_one_params(9, 6).label == "[[10,2,5]]_9"
    p = construction_one_params(9, 5)
    assert p.triple == (10, 0, 6) and p.degenerate
    assert construction_one_params(16, 14).triple == (17, 11, 4)
    with pytest.raises(ConstructionError):
        construction_one_params(9, 4)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 16, 25, 27, 32, 49])
def test_every_family_member_is_quantum_mds(q):
    for p in table_one(q):
        assert singleton_check(p).is_quantum_mds
        assert p.n == q + 1 and p.d_kind == "exact"


@pytest.mark.parametrize("q,count", [(9, 6), (16, 9), (25, 14)])
def test_table_one_matches_reference(q, count):
    cmp = compare_table_one(q)
    assert cmp.matches and len(cmp.entries) == count
    ds = [p.d for p in cmp.entries]
    assert ds == sorted(ds, reverse=True)
    if q == 9:
        assert len(cmp.notes) == 1 and "_25" in cmp.notes[0]
        assert (10, 10, 1) in {p.triple for p in cmp.entries}
    else:
        assert cmp.notes == []


def test_table_one_q16_formula():
    assert {p.triple for p in table_one(16)} == {(17, 2 * k - 17, 18 - k) for k in range(9, 18)}


@pytest.mark.parametrize("l", [4, 8, 16])
def test_open_problem_instance(l):
    p = open_problem_instance(l)
    assert p.triple == (l * l + 1, l * l - 2 * l + 3, l)
    assert singleton_check(p).slack == 0


def test_open_problem_rejects_odd_l():
    for bad in (2, 3, 6):
        with pytest.raises(ValueError):
            open_problem_instance(bad)


# -- hull search -----------------------------------------------------------


def test_hull_search_self_orthogonal_q5():
    r = hull_search(5, 6, 3, 3, budget=10**5, seed=0)
    assert r.found and r.witness.hull_dim == 3
    c = r.witness.code
    assert hull(c) == c and minimum_distance(c) == 4


def test_hull_search_q5_l1():
    r = hull_search(5, 6, 3, 1, seed=0)
    w = r.witness
    assert r.found and w.is_mds and w.mds_certificate == "enumerated"
    assert hull(w.code).k == 1


def test_hull_search_is_reproducible():
    a = hull_search(7, 8, 4, 2, seed=12345)
    b = hull_search(7, 8, 4, 2, seed=12345)
    assert a.found and a.to_json() == b.to_json()


def test_hull_search_impossible_targets():
    r = hull_search(5, 6, 3, 4)
    assert not r.found and r.trials == 0
    r = hull_search(5, 6, 4, 3)
    assert not r.found and r.trials == 0


def test_hull_search_budget_exhaustion():
    # no [6, 4]_5 extended GRS code has a 2-dimensional hull (see below)
    r = hull_search(5, 6, 4, 2, budget=500, seed=0)
    assert not r.found and r.witness is None and r.trials == 500


def test_hull_search_argument_errors():
    with pytest.raises(ConstructionError):
        hull_search(5, 8, 3, 1)
    with pytest.raises(ConstructionError):
        hull_search(5, 6, 0, 0)
    with pytest.raises(ConstructionError):
        hull_search(5, 6, 3, 1, budget=0)


def test_hull_search_non_extended_length():
    r = hull_search(7, 6, 3, 1, seed=3)
    assert r.found and r.witness.code.n == 6 and hull(r.witness.code).k == 1


@pytest.mark.parametrize(
    "q,k,dims",
    [(5, 2, {0, 1}), (5, 3, {0, 1, 2, 3}), (5, 4, {0, 1}), (7, 4, {0, 1, 2, 3, 4}), (7, 5, {0, 1, 2})],
)
def test_extended_hull_dimensions_exhaustive(q, k, dims):
    assert extended_hull_dims(q, k) == dims


# -- hull witness to quantum code -----------------------------------------


def test_hull_to_quantum_self_orthogonal():
    w = hull_search(5, 6, 3, 3, seed=0).witness
    res = hull_to_quantum(w, verify=True)
    assert res.params.triple == (6, 0, 4) and res.params.d_kind == "exact"
    assert res.transcript["gram_rank"] == 0 == res.transcript["bound"]
    assert css_distance_details(w.code, w.code, 0).d == 4


def test_hull_to_quantum_q7_length_eight():
    w = hull_search(7, 8, 4, 4, seed=0).witness
    res = hull_to_quantum(w)
    assert res.params.label == "[[8,0,5]]_7"
    assert singleton_check(res.params).is_quantum_mds


def test_hull_to_quantum_precondition():
    w = hull_search(5, 6, 3, 1, seed=0).witness
    with pytest.raises(ConstructionError):
        hull_to_quantum(w)


def test_q5_k4_hull_route_is_infeasible():
    # the formula member [[6,2,3]]_5 needs a [6,4] code with a hull of
    # dimension >= 2, which no extended GRS code on these points has
    assert construction_one_params(5, 4).triple == (6, 2, 3)
    assert max(extended_hull_dims(5, 4)) == 1


@pytest.mark.xfail(reason="no [10,6]_9 extended GRS code with a 4-dimensional hull was found by sampling", strict=False)
def test_hull_route_q9_k6():
    r = hull_search(9, 10, 6, 4, budget=3000, seed=0)
    assert r.found
    assert hull_to_quantum(r.witness).params.triple == (10, 2, 5)


def test_hull_witness_json():
    r = hull_search(5, 6, 2, 1, seed=0)
    obj = r.to_json()
    assert obj["found"] and obj["witness"]["hull_dim"] == 1 and obj["witness"]["seed"] == 0


def test_manual_witness_with_design_certificate():
    f = gf(5)
    code = grs_code(GrsSpec(f, tuple(range(5)), hull_search(5, 6, 3, 3).witness.multipliers, 3, True))
    w = HullWitness(code, 3, True, "design")
    assert hull_to_quantum(w, cap=1).params.triple == (6, 0, 4)


# -- GRS pair family -------------------------------------------------------


def test_construction_two_examples():
    res = construction_two(5, 5, 3, 3, exact=True, verify=True)
    assert res.params.label == "[[5,1,3]]_5" and res.params.provenance == "enumerated"
    assert singleton_check(res.params).is_quantum_mds
    assert res.transcript["criteria"]["agree"] and res.transcript["dual_formula"]
    full = construction_two(7, 6, 6, 6)
    assert full.params.triple == (6, 6, 1)
    r = construction_two(8, 6, 4, 5, exact=True)
    assert r.params.label == "[[6,3,2]]_8"
    lower = construction_two(8, 6, 4, 5)
    assert lower.params.label == "[[6,3,>=2]]_8"


def test_construction_two_errors():
    with pytest.raises(CriterionError):
        construction_two(7, 6, 2, 3)
    with pytest.raises(ConstructionError):
        construction_two(5, 6, 3, 3)
    with pytest.raises(ConstructionError):
        construction_two(5, 5, 0, 5)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_construction_two_always_holds(q):
    for n in range(2, q + 1):
        for k1, k2 in itertools.product(range(1, n + 1), repeat=2):
            if k1 + k2 < n:
                continue
            res = construction_two(q, n, k1, k2)
            assert res.params.k == k1 + k2 - n
            assert res.params.d == min(n - k1 + 1, n - k2 + 1)
            assert res.transcript["stack_rank"] == k1


@pytest.mark.parametrize("q", [3, 4, 5])
def test_construction_two_exact_distance_small(q):
    for n in range(2, q + 1):
        for k in range(math.ceil(n / 2), n + 1):
            res = construction_two(q, n, k, k, exact=True)
            assert res.params.d == n - k + 1


def test_construction_two_codes_shape():
    c1, c2 = construction_two_codes(7, 5, 3, 4)
    assert (c1.n, c1.k, c2.k) == (5, 3, 4)


# -- distance ranges for the length families -------------------------------


def test_distance_range_examples():
    assert distance_range(9) == (2, 5)
    assert distance_range(8) == (2, 5)
    assert distance_range(2) == (2, 2)
    with pytest.raises(ConstructionError):
        distance_range(1)


def test_table_two_l3():
    rows = {(r.family, tuple(sorted(r.params.items()))): r for r in table_two_ranges(3)}
    first = rows[("n=l^2", ())]
    assert (first.n, first.d_min, first.d_max) == (9, 2, 5)
    assert first.printed_d_max == 6 and first.note
    second = rows[("n=l^2-1", ())]
    assert (second.n, second.d_max, second.printed_d_max) == (8, 5, 5)
    tl = [r for r in table_two_ranges(3) if r.family == "n=tl"]
    assert [r.n for r in tl] == [3, 6, 9]
    assert all("tl/22" in r.note for r in tl)


@pytest.mark.parametrize("l", [2, 3, 4, 5, 7, 8, 9])
def test_table_two_ranges_consistent(l):
    for r in table_two_ranges(l):
        assert (r.d_min, r.d_max) == distance_range(r.n)
        assert 2 <= r.n <= l * l
        if r.n % 2 == 0 and isinstance(r.printed_d_max, int):
            assert r.printed_d_max == r.d_max


def test_table_two_rejects_non_prime_power():
    with pytest.raises(ConstructionError):
        table_two_ranges(6)


def test_table_two_lambda_family():
    rows = [r for r in table_two_ranges(4) if r.family == "n=lambda(l+1)"]
    assert [r.params["lambda"] for r in rows] == [1, 3]
    assert rows[0].n == 5 and rows[0].printed_d_max == 3.5
    assert np.isclose(rows[1].printed_d_max, 8.5)
