from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhtc.linalg import (
    SpanReducer,
    apply_columns,
    extend_to_complement,
    rank_kernel_image,
    solve_linear,
)


def cols_from_rows(rows):
    ncols = len(rows[0]) if rows else 0
    return [{i: Fraction(r[j]) for i, r in enumerate(rows) if r[j]} for j in range(ncols)]


def test_identity_rank():
    el = rank_kernel_image(cols_from_rows([[1, 0], [0, 1]]), 2)
    assert el.rank == 2
    assert el.kernel == []


def test_zero_matrix():
    el = rank_kernel_image(cols_from_rows([[0, 0], [0, 0], [0, 0]]), 3)
    assert el.rank == 0
    assert len(el.kernel) == 2


def test_rank_one_kernel():
    el = rank_kernel_image(cols_from_rows([[1, 2], [2, 4]]), 2)
    assert el.rank == 1
    (k,) = el.kernel
    # proportional to (2, -1)
    assert k[0] * -1 == k[1] * 2


def test_empty_matrix():
    assert rank_kernel_image([], 0).rank == 0


def test_solve_identity():
    b = {0: Fraction(3), 2: Fraction(-1, 2)}
    assert solve_linear(cols_from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3, b) == b


def test_solve_underdetermined():
    cols = cols_from_rows([[1, 1]])
    x = solve_linear(cols, 1, {0: Fraction(2)})
    assert apply_columns(cols, x) == {0: 2}


def test_solve_inconsistent():
    assert solve_linear(cols_from_rows([[1], [1]]), 2, {0: Fraction(1)}) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear(cols_from_rows([[1, 0]]), 1, {3: Fraction(1)})


def test_complement_greedy():
    comp = extend_to_complement([{0: Fraction(1), 1: Fraction(1)}], 2)
    assert len(comp) == 1


def test_reduced_fractions():
    el = rank_kernel_image(cols_from_rows([[3, 6, 1], [2, 4, 5]]), 2)
    for v in el.kernel:
        for c in v.values():
            assert isinstance(c, Fraction)
            assert c.denominator > 0


small = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 6))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    return m, rows


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(data):
    m, rows = data
    cols = cols_from_rows(rows)
    el = rank_kernel_image(cols, m)
    assert el.rank + len(el.kernel) == len(cols)
    for v in el.kernel:
        assert v and apply_columns(cols, v) == {}
    assert SpanReducer(el.kernel).dim == len(el.kernel)
    assert SpanReducer(el.image).dim == el.rank
    for c in cols:
        assert c in SpanReducer(el.image)


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_consistency(data, xs):
    m, rows = data
    cols = cols_from_rows(rows)
    x0 = {j: Fraction(xs[j]) for j in range(len(cols)) if xs[j]}
    b = apply_columns(cols, x0)
    x = solve_linear(cols, m, b)
    assert x is not None and apply_columns(cols, x) == b


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_tracked_reduction(data):
    m, rows = data
    vecs = cols_from_rows(rows)
    red = SpanReducer(track=True)
    for v in vecs:
        red.insert(v)
    target = {0: Fraction(1)}
    res, coeffs = red.reduce(target)
    back = dict(res)
    for i, c in coeffs.items():
        for k, a in vecs[i].items():
            back[k] = back.get(k, 0) + c * a
    assert {k: v for k, v in back.items() if v} == target
