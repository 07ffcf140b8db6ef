from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strange_duality import oracles, selftest
from strange_duality.littlewood_richardson import lr_coefficient, lr_product
from strange_duality.schubert import (
    CohClass,
    GrassmannianShape,
    InputError,
    classical_product,
    codim,
    diagonal_decomposition_check,
    dual_subset,
    lambda_of_subset,
    pairing,
    subset_of_lambda,
)

G24 = GrassmannianShape.from_rn(2, 4)
G36 = GrassmannianShape.from_rn(3, 6)


def cls(shape, *parts):
    return CohClass.from_partition(shape, parts)


@pytest.mark.parametrize(
    "subset, lam",
    [((1, 3), (2, 1)), ((3, 4), (0, 0)), ((1, 2), (2, 2))],
)
def test_lambda_of_subset_examples(subset, lam):
    assert lambda_of_subset(G24, subset) == lam
    assert subset_of_lambda(G24, lam) == subset


def test_subset_of_lambda_full_box():
    assert subset_of_lambda(G36, (3, 3, 3)) == (1, 2, 3)


@pytest.mark.parametrize(
    "shape, subset, dual",
    [(G24, (1, 3), (2, 4)), (G24, (1, 2), (3, 4)), (G36, (1, 2, 3), (4, 5, 6))],
)
def test_dual_subset(shape, subset, dual):
    assert dual_subset(shape, subset) == dual


@pytest.mark.parametrize("subset, c", [((3, 4), 0), ((1, 2), 4), ((1, 3), 3)])
def test_codim(subset, c):
    assert codim(G24, subset) == c


@pytest.mark.parametrize("bad", [(1,), (1, 2, 3), (0, 2), (2, 5), (3, 2), (2, 2)])
def test_invalid_subsets_rejected(bad):
    with pytest.raises(InputError):
        lambda_of_subset(G24, bad)


@pytest.mark.parametrize("bad", [(3, 0), (1, 2), (-1, 0), (1, 1, 1)])
def test_invalid_partitions_rejected(bad):
    with pytest.raises(InputError):
        subset_of_lambda(G24, bad)


def test_invalid_shape_rejected():
    with pytest.raises(InputError):
        GrassmannianShape(0, 2)
    with pytest.raises(InputError):
        GrassmannianShape(2, 0)


def test_classical_product_examples():
    assert classical_product(G24, cls(G24, 1), cls(G24, 1)) == cls(G24, 2) + cls(G24, 1, 1)
    assert classical_product(G24, cls(G24, 2), cls(G24, 1, 1)) == CohClass(G24)
    for s in G24.subsets():
        a = CohClass.schubert(G24, s)
        assert classical_product(G24, a, CohClass.schubert(G24, G24.fundamental())) == a


def test_shape_mismatch_rejected():
    other = GrassmannianShape.from_rn(2, 5)
    with pytest.raises(InputError):
        classical_product(G24, cls(G24, 1), cls(other, 1))
    with pytest.raises(InputError):
        cls(G24, 1) + cls(other, 1)


def test_pairing_examples():
    w13, w24 = CohClass.schubert(G24, (1, 3)), CohClass.schubert(G24, (2, 4))
    assert pairing(G24, w13, w24) == 1
    assert pairing(G24, w13, w13) == 0
    sq = classical_product(G24, cls(G24, 1), cls(G24, 1))
    assert pairing(G24, sq, sq) == 2


@pytest.mark.parametrize("r, n", [(1, 2), (2, 4), (2, 5), (3, 6), (3, 7)])
def test_diagonal_decomposition(r, n):
    assert diagonal_decomposition_check(GrassmannianShape.from_rn(r, n))


def test_lr_known_coefficients():
    # s_21 * s_21 contains s_321 twice
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_product((1,), (1,)) == {(2,): 1, (1, 1): 1}
    assert lr_product((1,), (1,), max_rows=1) == {(2,): 1}


def test_json_round_trip():
    c = 3 * cls(G24, 2, 1) - cls(G24, 1)
    data = c.to_json()
    assert data["shape"] == [2, 4]
    assert all(isinstance(t["coeff"], str) for t in data["terms"])
    assert CohClass.from_json(json.dumps(data)) == c


def test_big_coefficients_survive_json():
    big = 10**40 + 7
    c = big * cls(G24, 1)
    assert CohClass.from_json(json.dumps(c.to_json()))[(2, 4)] == big


shapes = st.integers(2, 8).flatmap(
    lambda n: st.integers(1, n - 1).map(lambda r: GrassmannianShape.from_rn(r, n))
)


@st.composite
def shape_and_subsets(draw, count=1, max_n=8):
    n = draw(st.integers(2, max_n))
    r = draw(st.integers(1, n - 1))
    shape = GrassmannianShape.from_rn(r, n)
    subs = [
        tuple(sorted(draw(st.sets(st.integers(1, n), min_size=r, max_size=r))))
        for _ in range(count)
    ]
    return shape, subs


@given(shape_and_subsets())
def test_bijection_and_duality_property(data):
    shape, (s,) = data
    lam = lambda_of_subset(shape, s)
    assert subset_of_lambda(shape, lam) == s
    assert sum(lam) == codim(shape, s)
    d = dual_subset(shape, s)
    assert dual_subset(shape, d) == s
    assert codim(shape, s) + codim(shape, d) == shape.dimension


@settings(max_examples=60, deadline=None)
@given(shape_and_subsets(count=3, max_n=7))
def test_classical_ring_property(data):
    shape, subs = data
    a, b, c = (CohClass.schubert(shape, s) for s in subs)
    prod = lambda x, y: classical_product(shape, x, y)  # noqa: E731
    assert prod(a, b) == prod(b, a)
    assert prod(prod(a, b), c) == prod(a, prod(b, c))
    assert all(v > 0 for _, v in prod(a, b).items())


@settings(max_examples=60, deadline=None)
@given(shape_and_subsets(count=2, max_n=8))
def test_pairing_is_permutation_property(data):
    shape, (s, t) = data
    if codim(shape, s) + codim(shape, t) != shape.dimension:
        return
    value = pairing(shape, CohClass.schubert(shape, s), CohClass.schubert(shape, t))
    assert value == int(t == dual_subset(shape, s))


@settings(max_examples=40, deadline=None)
@given(shape_and_subsets(count=2, max_n=6))
def test_lr_matches_pieri_oracle_property(data):
    shape, (s, t) = data
    lam, mu = lambda_of_subset(shape, s), lambda_of_subset(shape, t)
    assert lr_product(lam, mu, shape.r) == oracles.pieri_lr_product(lam, mu, shape.r)


@pytest.mark.parametrize("shape", selftest.shapes_up_to(6), ids=str)
def test_exhaustive_lr_vs_pieri_small(shape):
    assert selftest.check_lr_vs_pieri(shape)


@pytest.mark.parametrize("shape", selftest.shapes_up_to(8), ids=str)
def test_pairing_permutation_exhaustive(shape):
    assert selftest.check_pairing_permutation(shape)
    assert selftest.check_poincare(shape)
